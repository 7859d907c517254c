//! The five figures. Two-series runs draw the series side by side.

use std::f64::consts::PI;

use seasonwave::dwt;
use seasonwave::fourier::coefficient_scatter;
use seasonwave::Result;

use crate::analysis::{CoherenceAnalysis, SeriesAnalysis};
use crate::svg::{colorbar, viridis, Anchor, Axis, Panel, Svg};

const PANEL_W: f64 = 420.0;
const PANEL_H: f64 = 300.0;
const LEFT: f64 = 70.0;
const TOP: f64 = 40.0;
const GAP: f64 = 90.0;
const BOTTOM: f64 = 50.0;

const SERIES_COLORS: [&str; 2] = ["#1f77b4", "#d62728"];
const COI_COLOR: &str = "#ffffff";

fn canvas(columns: usize, extra_right: f64) -> Svg {
    let w = LEFT + columns as f64 * PANEL_W + (columns.saturating_sub(1)) as f64 * GAP + 30.0 + extra_right;
    Svg::new(w, TOP + PANEL_H + BOTTOM)
}

fn column_x(i: usize) -> f64 {
    LEFT + i as f64 * (PANEL_W + GAP)
}

fn range(values: impl IntoIterator<Item = f64>) -> (f64, f64) {
    values.into_iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Real versus imaginary part of every non-DC Fourier coefficient.
pub fn scatter(series: &[&SeriesAnalysis]) -> String {
    let mut svg = canvas(series.len(), 0.0);
    for (i, a) in series.iter().enumerate() {
        let pts = coefficient_scatter(&a.spectrum);
        let reach = pts.iter().fold(0.0f64, |m, (re, im)| m.max(re.abs()).max(im.abs())) * 1.1;
        let axis = Axis::linear(-reach, reach);
        let p = Panel { x: column_x(i), y: TOP, w: PANEL_W, h: PANEL_H, xa: axis, ya: axis, flip_y: false };
        svg.dashed(p.point(axis.lo, 0.0), p.point(axis.hi, 0.0), "#aaaaaa");
        svg.dashed(p.point(0.0, axis.lo), p.point(0.0, axis.hi), "#aaaaaa");
        for &(re, im) in &pts {
            svg.circle(p.point(re, im), 2.5, SERIES_COLORS[i % 2]);
        }
        let title = format!("{}: Fourier coefficients (dispersion {:.3})", a.series.label(), a.dispersion);
        p.axes(&mut svg, &title, "Re X_k", "Im X_k");
    }
    svg.finish()
}

/// Power against frequency with the dominant bin marked.
pub fn periodogram(series: &[&SeriesAnalysis]) -> String {
    let mut svg = canvas(series.len(), 0.0);
    for (i, a) in series.iter().enumerate() {
        let pg = &a.periodogram;
        let (_, pmax) = range(pg.power()[1..].iter().copied());
        let fmax = *pg.freqs().last().expect("periodogram has bins");
        let p = Panel {
            x: column_x(i),
            y: TOP,
            w: PANEL_W,
            h: PANEL_H,
            xa: Axis::linear(0.0, fmax),
            ya: Axis::linear(0.0, pmax * 1.15),
            flip_y: false,
        };
        let line: Vec<(f64, f64)> = (1..pg.power().len()).map(|k| p.point(pg.freqs()[k], pg.power()[k])).collect();
        svg.polyline(&line, SERIES_COLORS[i % 2], 1.5);
        for k in 1..pg.power().len() {
            svg.circle(p.point(pg.freqs()[k], pg.power()[k]), 2.0, SERIES_COLORS[i % 2]);
        }
        let k = pg.dominant_bin();
        let peak = p.point(pg.freqs()[k], pg.power()[k]);
        svg.circle(peak, 4.5, "#000000");
        svg.text((peak.0 + 8.0, peak.1 + 4.0), &format!("{:.2} days", pg.dominant_period()), 11.0, Anchor::Start);
        p.axes(&mut svg, &format!("{}: periodogram", a.series.label()), "frequency (1/day)", "power |X_k|^2");
    }
    svg.finish()
}

/// The series followed by each level's reconstruction, one column per filter.
pub fn dwt_levels(series: &[&SeriesAnalysis]) -> Result<String> {
    let columns: Vec<(usize, &SeriesAnalysis, usize)> =
        series.iter().enumerate().flat_map(|(i, a)| (0..a.dwt.len()).map(move |d| (i, *a, d))).collect();
    let rows = series.first().map_or(0, |a| a.dwt.first().map_or(0, |d| d.levels)) + 2;
    let row_h = 64.0;
    let col_w = 300.0;
    let gap = 40.0;
    let width = LEFT + columns.len() as f64 * col_w + columns.len().saturating_sub(1) as f64 * gap + 30.0;
    let mut svg = Svg::new(width, TOP + rows as f64 * (row_h + 14.0) + BOTTOM);

    for (c, &(i, a, d)) in columns.iter().enumerate() {
        let dec = &a.dwt[d];
        let comps = dwt::level_components(dec)?;
        let x0 = LEFT + c as f64 * (col_w + gap);
        let mut traces: Vec<(String, &[f64])> = vec![(a.series.label().to_string(), a.series.values())];
        for (l, comp) in comps.iter().enumerate() {
            let name = if l < dec.levels { format!("d{}", l + 1) } else { format!("a{}", dec.levels) };
            traces.push((name, comp.as_slice()));
        }
        let dt = a.series.dt();
        let tmax = (a.series.len() - 1) as f64 * dt;
        svg.text((x0 + col_w / 2.0, TOP - 14.0), &format!("{} / {}", a.series.label(), dec.filter.name), 13.0, Anchor::Middle);
        for (r, (name, values)) in traces.iter().enumerate() {
            let y0 = TOP + r as f64 * (row_h + 14.0);
            let (lo, hi) = range(values.iter().copied());
            let p = Panel { x: x0, y: y0, w: col_w, h: row_h, xa: Axis::linear(0.0, tmax), ya: Axis::linear(lo, hi), flip_y: false };
            let pts: Vec<(f64, f64)> = values.iter().enumerate().map(|(t, v)| p.point(t as f64 * dt, *v)).collect();
            svg.frame(x0, y0, col_w, row_h);
            svg.polyline(&pts, SERIES_COLORS[i % 2], 1.2);
            svg.text((x0 - 6.0, y0 + row_h / 2.0 + 4.0), name, 11.0, Anchor::End);
        }
        let axis_y = TOP + rows as f64 * (row_h + 14.0) - 14.0;
        let p = Panel { x: x0, y: TOP, w: col_w, h: axis_y - TOP, xa: Axis::linear(0.0, tmax), ya: Axis::linear(0.0, 1.0), flip_y: false };
        for t in p.xa.ticks() {
            let x = p.px(t);
            svg.line((x, axis_y), (x, axis_y + 4.0), "#333333", 1.0);
            svg.text((x, axis_y + 15.0), &crate::svg::tick_label(t), 10.0, Anchor::Middle);
        }
        svg.text((x0 + col_w / 2.0, axis_y + 32.0), "time (days)", 11.0, Anchor::Middle);
    }
    Ok(svg.finish())
}

/// A time by period heat map panel with the cone of influence shaded.
fn heat_panel(
    svg: &mut Svg,
    x0: f64,
    values: &[Vec<f64>],
    scales: &[f64],
    dj: f64,
    dt: f64,
    to_period: impl Fn(f64) -> f64,
    max_trusted_scale: &[f64],
    vmax: f64,
) -> Panel {
    let n = values.first().map_or(0, Vec::len);
    let half = 2f64.powf(dj / 2.0);
    let (pmin, pmax) = (to_period(scales[0] / half), to_period(scales[scales.len() - 1] * half));
    let p = Panel {
        x: x0,
        y: TOP,
        w: PANEL_W,
        h: PANEL_H,
        xa: Axis::linear(-0.5 * dt, (n as f64 - 0.5) * dt),
        ya: Axis::log2(pmin, pmax),
        flip_y: true,
    };
    for (j, row) in values.iter().enumerate() {
        let top = p.py(to_period(scales[j] / half));
        let bottom = p.py(to_period(scales[j] * half));
        for (t, v) in row.iter().enumerate() {
            let left = p.px((t as f64 - 0.5) * dt);
            let right = p.px((t as f64 + 0.5) * dt);
            svg.rect(left, top, right - left + 0.3, bottom - top + 0.3, &viridis(v / vmax));
        }
    }

    // Shade everything below the cone boundary (larger periods than trusted).
    let boundary: Vec<(f64, f64)> = max_trusted_scale
        .iter()
        .enumerate()
        .map(|(t, &s)| {
            let period = if s > 0.0 { to_period(s).clamp(pmin, pmax) } else { pmin };
            p.clamp(p.point(t as f64 * dt, period))
        })
        .collect();
    let mut shade = boundary.clone();
    shade.push(p.clamp(p.point((n as f64 - 0.5) * dt, pmax)));
    shade.push(p.clamp(p.point(-0.5 * dt, pmax)));
    svg.polygon(&shade, COI_COLOR, 0.45);
    svg.polyline(&boundary, "#000000", 1.2);
    p
}

/// Percent-of-energy scalogram with dominant periods marked.
pub fn scalogram(series: &[&SeriesAnalysis]) -> String {
    let mut svg = canvas(series.len(), 60.0);
    for (i, a) in series.iter().enumerate() {
        let w = a.cwt.wavelet();
        let grid = a.cwt.grid();
        let vmax = a.scalogram.percent.iter().flatten().fold(0.0f64, |m, v| m.max(*v));
        let p = heat_panel(
            &mut svg,
            column_x(i),
            &a.scalogram.percent,
            grid.scales(),
            grid.dj(),
            a.series.dt(),
            |s| w.scale_to_period(s),
            &a.coi.max_trusted_scale,
            vmax,
        );
        for &s in &a.scalogram.dominant_scales {
            let y = p.py(w.scale_to_period(s));
            svg.dashed((p.x, y), (p.x + p.w, y), "#ffffff");
            svg.text((p.x + p.w - 4.0, y - 3.0), &format!("{:.1} d", w.scale_to_period(s)), 10.0, Anchor::End);
        }
        p.axes(&mut svg, &format!("{}: {} scalogram", a.series.label(), w.name()), "time (days)", "period (days)");
        if i + 1 == series.len() {
            colorbar(&mut svg, p.x + p.w + 14.0, p.y, p.h, "0", &format!("{vmax:.3}"), "% of energy");
        }
    }
    svg.finish()
}

/// Squared coherence with the cone of influence and decimated phase arrows.
pub fn coherence(c: &CoherenceAnalysis, labels: (&str, &str), dt: f64) -> String {
    let mut svg = canvas(1, 60.0);
    let w = &c.wavelet;
    let grid = &c.field.grid;
    let p = heat_panel(
        &mut svg,
        column_x(0),
        &c.field.r2,
        grid.scales(),
        grid.dj(),
        dt,
        |s| w.scale_to_period(s),
        &c.field.coi.max_trusted_scale,
        1.0,
    );
    let len = 9.0;
    for arrow in &c.arrows {
        let (x, y) = p.point(arrow.t_index as f64 * dt, w.scale_to_period(grid.scales()[arrow.s_index]));
        let (dx, dy) = (arrow.angle.cos(), -arrow.angle.sin());
        let tail = (x - 0.5 * len * dx, y - 0.5 * len * dy);
        let head = (x + 0.5 * len * dx, y + 0.5 * len * dy);
        svg.line(tail, head, "#000000", 1.2);
        let barb = |turn: f64| {
            let a = arrow.angle + PI + turn;
            (head.0 + 3.5 * a.cos(), head.1 - 3.5 * a.sin())
        };
        svg.polygon(&[head, barb(0.5), barb(-0.5)], "#000000", 1.0);
    }
    let title = format!("{} vs {}: {} coherence (arrows r2 >= {})", labels.0, labels.1, w.name(), c.min_r2);
    p.axes(&mut svg, &title, "time (days)", "period (days)");
    colorbar(&mut svg, p.x + p.w + 14.0, p.y, p.h, "0", "1", "squared coherence");
    svg.finish()
}

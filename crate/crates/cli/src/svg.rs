//! Minimal SVG writer: shapes, text, linear and log2 axes, a viridis ramp.
//!
//! Coordinates are printed with two decimals so output is byte-stable.

use std::fmt::Write as _;

pub const FONT: &str = "font-family=\"sans-serif\"";

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

pub fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    Start,
    Middle,
    End,
}

impl Anchor {
    fn as_str(self) -> &'static str {
        match self {
            Anchor::Start => "start",
            Anchor::Middle => "middle",
            Anchor::End => "end",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Svg {
    width: f64,
    height: f64,
    body: String,
}

impl Svg {
    pub fn new(width: f64, height: f64) -> Self {
        let mut svg = Svg { width, height, body: String::new() };
        svg.rect(0.0, 0.0, width, height, "#ffffff");
        svg
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{fill}\"/>",
            num(x),
            num(y),
            num(w),
            num(h)
        );
    }

    pub fn frame(&mut self, x: f64, y: f64, w: f64, h: f64) {
        let _ = writeln!(
            self.body,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333333\"/>",
            num(x),
            num(y),
            num(w),
            num(h)
        );
    }

    pub fn line(&mut self, (x1, y1): (f64, f64), (x2, y2): (f64, f64), stroke: &str, width: f64) {
        let _ = writeln!(
            self.body,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"{}\"/>",
            num(x1),
            num(y1),
            num(x2),
            num(y2),
            num(width)
        );
    }

    pub fn dashed(&mut self, (x1, y1): (f64, f64), (x2, y2): (f64, f64), stroke: &str) {
        let _ = writeln!(
            self.body,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-dasharray=\"4 3\"/>",
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        );
    }

    fn points(points: &[(f64, f64)]) -> String {
        points.iter().map(|&(x, y)| format!("{},{}", num(x), num(y))).collect::<Vec<_>>().join(" ")
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], stroke: &str, width: f64) {
        if points.len() < 2 {
            return;
        }
        let _ = writeln!(
            self.body,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{}\"/>",
            Self::points(points),
            num(width)
        );
    }

    pub fn polygon(&mut self, points: &[(f64, f64)], fill: &str, opacity: f64) {
        if points.len() < 3 {
            return;
        }
        let _ = writeln!(
            self.body,
            "<polygon points=\"{}\" fill=\"{fill}\" fill-opacity=\"{}\"/>",
            Self::points(points),
            num(opacity)
        );
    }

    pub fn circle(&mut self, (x, y): (f64, f64), r: f64, fill: &str) {
        let _ = writeln!(self.body, "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\"/>", num(x), num(y), num(r));
    }

    pub fn text(&mut self, (x, y): (f64, f64), text: &str, size: f64, anchor: Anchor) {
        let _ = writeln!(
            self.body,
            "<text x=\"{}\" y=\"{}\" {FONT} font-size=\"{}\" text-anchor=\"{}\">{}</text>",
            num(x),
            num(y),
            num(size),
            anchor.as_str(),
            escape(text)
        );
    }

    /// Text rotated a quarter turn counter-clockwise about its anchor.
    pub fn vertical_text(&mut self, (x, y): (f64, f64), text: &str, size: f64) {
        let _ = writeln!(
            self.body,
            "<text x=\"{}\" y=\"{}\" {FONT} font-size=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 {} {})\">{}</text>",
            num(x),
            num(y),
            num(size),
            num(x),
            num(y),
            escape(text)
        );
    }

    pub fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n{}</svg>\n",
            num(self.width),
            num(self.height),
            num(self.width),
            num(self.height),
            self.body
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scale {
    Linear,
    Log2,
}

/// Maps data values to a `[0, 1]` fraction of an axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub scale: Scale,
}

impl Axis {
    /// Linear axis over `[lo, hi]`, widened when the range is empty.
    pub fn linear(lo: f64, hi: f64) -> Self {
        let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 0.5 * lo.abs().max(1.0), hi + 0.5 * hi.abs().max(1.0)) };
        Axis { lo, hi, scale: Scale::Linear }
    }

    pub fn log2(lo: f64, hi: f64) -> Self {
        let (lo, hi) = if hi > lo { (lo, hi) } else { (lo / 2.0, hi * 2.0) };
        Axis { lo, hi, scale: Scale::Log2 }
    }

    pub fn fraction(&self, v: f64) -> f64 {
        match self.scale {
            Scale::Linear => (v - self.lo) / (self.hi - self.lo),
            Scale::Log2 => (v.log2() - self.lo.log2()) / (self.hi.log2() - self.lo.log2()),
        }
    }

    pub fn ticks(&self) -> Vec<f64> {
        match self.scale {
            Scale::Linear => {
                let raw = (self.hi - self.lo) / 5.0;
                let mag = 10f64.powf(raw.log10().floor());
                let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
                let first = (self.lo / step).ceil() as i64;
                let last = (self.hi / step).floor() as i64;
                (first..=last).map(|i| i as f64 * step).collect()
            }
            Scale::Log2 => {
                let first = self.lo.log2().ceil() as i32;
                let last = self.hi.log2().floor() as i32;
                (first..=last).map(|e| 2f64.powi(e)).collect()
            }
        }
    }
}

pub fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if (1e-3..1e5).contains(&a) {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.1e}")
    }
}

/// A plotting rectangle with data axes. The y axis grows upward unless
/// `flip_y` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Panel {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
    pub xa: Axis,
    pub ya: Axis,
    pub flip_y: bool,
}

impl Panel {
    pub fn px(&self, v: f64) -> f64 {
        self.x + self.xa.fraction(v) * self.w
    }

    pub fn py(&self, v: f64) -> f64 {
        let f = self.ya.fraction(v);
        if self.flip_y {
            self.y + f * self.h
        } else {
            self.y + (1.0 - f) * self.h
        }
    }

    pub fn point(&self, x: f64, y: f64) -> (f64, f64) {
        (self.px(x), self.py(y))
    }

    /// Clamps a pixel position to the panel.
    pub fn clamp(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (x.clamp(self.x, self.x + self.w), y.clamp(self.y, self.y + self.h))
    }

    /// Frame, tick marks with labels, axis titles, and a panel title.
    pub fn axes(&self, svg: &mut Svg, title: &str, xlabel: &str, ylabel: &str) {
        svg.frame(self.x, self.y, self.w, self.h);
        let bottom = self.y + self.h;
        for t in self.xa.ticks() {
            let x = self.px(t);
            svg.line((x, bottom), (x, bottom + 4.0), "#333333", 1.0);
            svg.text((x, bottom + 15.0), &tick_label(t), 10.0, Anchor::Middle);
        }
        for t in self.ya.ticks() {
            let y = self.py(t);
            svg.line((self.x - 4.0, y), (self.x, y), "#333333", 1.0);
            svg.text((self.x - 6.0, y + 3.5), &tick_label(t), 10.0, Anchor::End);
        }
        svg.text((self.x + self.w / 2.0, self.y - 8.0), title, 13.0, Anchor::Middle);
        svg.text((self.x + self.w / 2.0, bottom + 32.0), xlabel, 11.0, Anchor::Middle);
        svg.vertical_text((self.x - 44.0, self.y + self.h / 2.0), ylabel, 11.0);
    }
}

const VIRIDIS: [(u8, u8, u8); 9] = [
    (68, 1, 84),
    (71, 44, 122),
    (59, 81, 139),
    (44, 113, 142),
    (33, 144, 141),
    (39, 173, 129),
    (92, 200, 99),
    (170, 220, 50),
    (253, 231, 37),
];

/// Viridis-like color for `v` in `[0, 1]` (clamped) as `#rrggbb`.
pub fn viridis(v: f64) -> String {
    let v = if v.is_finite() { v.clamp(0.0, 1.0) } else { 0.0 };
    let pos = v * (VIRIDIS.len() - 1) as f64;
    let i = (pos.floor() as usize).min(VIRIDIS.len() - 2);
    let f = pos - i as f64;
    let mix = |a: u8, b: u8| (a as f64 + f * (b as f64 - a as f64)).round() as u8;
    let (a, b) = (VIRIDIS[i], VIRIDIS[i + 1]);
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

/// Vertical color bar at `(x, y)` labelled at both ends.
pub fn colorbar(svg: &mut Svg, x: f64, y: f64, h: f64, lo: &str, hi: &str, title: &str) {
    let steps = 32;
    let step_h = h / steps as f64;
    for i in 0..steps {
        let v = 1.0 - (i as f64 + 0.5) / steps as f64;
        svg.rect(x, y + i as f64 * step_h, 12.0, step_h + 0.5, &viridis(v));
    }
    svg.frame(x, y, 12.0, h);
    svg.text((x + 16.0, y + 8.0), hi, 10.0, Anchor::Start);
    svg.text((x + 16.0, y + h), lo, 10.0, Anchor::Start);
    svg.vertical_text((x + 40.0, y + h / 2.0), title, 10.0);
}

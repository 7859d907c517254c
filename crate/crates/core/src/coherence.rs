//! Cross-wavelet spectrum, smoothed wavelet coherence, and relative phase.
//!
//! For two series with transforms `Wx` and `Wy` on the same grid,
//!
//! ```text
//! R^2(s,t) = |S(Wxy / s)|^2 / ( S(|Wx|^2 / s) * S(|Wy|^2 / s) )
//! phase(s,t) = arg S(Wxy / s)
//! ```
//!
//! where `Wxy = Wx * conj(Wy)` and `S` smooths each scale row with a Gaussian
//! of standard deviation `s` (in time) and then each time column with a boxcar
//! spanning `0.6 / dj` scale bins. `S` has nonnegative weights, so
//! Cauchy-Schwarz keeps `R^2` within `[0, 1]`.
//!
//! Phase is measured in `(-pi, pi]`: `0` is in phase, `+-pi` anti-phase.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cwt::{coi, cwt, ConeOfInfluence, CwtField, MotherWavelet, ScaleGrid};
use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Default coherence threshold for phase arrows and the phase summary.
pub const DEFAULT_MIN_R2: f64 = 0.5;

/// Denominators below this produce `R^2 = 0`, phase `0`.
pub const DENOMINATOR_FLOOR: f64 = 1e-300;

/// Time kernel truncation, in standard deviations.
const GAUSS_TRUNCATION: f64 = 3.0;

/// Width of the scale boxcar, in octaves.
const SCALE_WINDOW_OCTAVES: f64 = 0.6;

/// `Wx * conj(Wy)` on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossSpectrum {
    pub wxy: Vec<Vec<Complex64>>,
    pub grid: ScaleGrid,
    pub dt: f64,
}

pub fn cross_spectrum(wx: &CwtField, wy: &CwtField) -> Result<CrossSpectrum> {
    if !wx.same_layout(wy) {
        return Err(Error::GridMismatch);
    }
    let wxy = wx
        .coeffs()
        .iter()
        .zip(wy.coeffs())
        .map(|(rx, ry)| rx.iter().zip(ry).map(|(a, b)| a * b.conj()).collect())
        .collect();
    Ok(CrossSpectrum { wxy, grid: wx.grid().clone(), dt: wx.dt() })
}

/// Number of scale bins averaged by the boxcar: `0.6 / dj` rounded to the
/// nearest odd integer, at least 1.
pub fn scale_window(dj: f64) -> usize {
    let width = SCALE_WINDOW_OCTAVES / dj;
    let half = ((width - 1.0) / 2.0 + 0.5).floor().max(0.0) as usize;
    2 * half + 1
}

fn gaussian_weights(sigma: f64) -> Vec<f64> {
    let radius = (GAUSS_TRUNCATION * sigma).floor() as usize;
    (0..=radius).map(|k| (-0.5 * (k as f64 / sigma).powi(2)).exp()).collect()
}

/// Convolves with a symmetric kernel given by its nonnegative half
/// `weights[0..]`, renormalizing by the weight that falls inside the row.
fn smooth_row(row: &[Complex64], weights: &[f64]) -> Vec<Complex64> {
    let n = row.len() as isize;
    let radius = weights.len() as isize - 1;
    (0..n)
        .map(|t| {
            let lo = (t - radius).max(0);
            let hi = (t + radius).min(n - 1);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut total = 0.0;
            for u in lo..=hi {
                let w = weights[(u - t).unsigned_abs()];
                acc += row[u as usize] * w;
                total += w;
            }
            acc / total
        })
        .collect()
}

/// Gaussian-in-time then boxcar-in-scale smoothing of a scale-major matrix.
///
/// Both kernels are renormalized near the edges so constants pass through
/// unchanged.
pub fn smooth(field: &[Vec<Complex64>], grid: &ScaleGrid, dt: f64) -> Result<Vec<Vec<Complex64>>> {
    let n = field.first().map_or(0, Vec::len);
    if field.len() != grid.len() || field.iter().any(|r| r.len() != n) {
        return Err(Error::GridMismatch);
    }
    let in_time: Vec<Vec<Complex64>> = field
        .par_iter()
        .zip(grid.scales().par_iter())
        .map(|(row, &s)| smooth_row(row, &gaussian_weights(s / dt)))
        .collect();

    let half = scale_window(grid.dj()) / 2;
    let n_scales = grid.len();
    let out = (0..n_scales)
        .map(|j| {
            let lo = j.saturating_sub(half);
            let hi = (j + half).min(n_scales - 1);
            let count = (hi - lo + 1) as f64;
            (0..n)
                .map(|t| (lo..=hi).map(|k| in_time[k][t]).sum::<Complex64>() / count)
                .collect()
        })
        .collect();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Smoothing {
    /// Gaussian in time, boxcar in scale.
    #[default]
    Standard,
    /// Pointwise ratio; coherence is then identically one. Only useful as a
    /// diagnostic.
    None,
}

/// How a [`CoherenceField`] was smoothed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingDescriptor {
    pub kind: Smoothing,
    pub dj: f64,
    /// Scale bins in the boxcar (1 when unsmoothed).
    pub scale_window: usize,
    /// Gaussian truncation in standard deviations.
    pub truncation: f64,
}

/// Squared coherence, relative phase, and the cone of influence.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceField {
    /// `r2[scale][time]` in `[0, 1]`.
    pub r2: Vec<Vec<f64>>,
    /// `phase[scale][time]` in `(-pi, pi]`.
    pub phase: Vec<Vec<f64>>,
    pub coi: ConeOfInfluence,
    pub grid: ScaleGrid,
    pub smoothing: SmoothingDescriptor,
}

impl CoherenceField {
    pub fn n_times(&self) -> usize {
        self.coi.max_trusted_scale.len()
    }

    /// `(scale index, time index)` of every cell inside the cone.
    pub fn cells_in_coi(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.grid.scales().iter().enumerate().flat_map(move |(j, &s)| {
            (0..self.n_times()).filter(move |&t| self.coi.contains(t, s)).map(move |t| (j, t))
        })
    }

    /// Mean `R^2` over the cone, `None` if the cone holds no grid cell.
    pub fn mean_r2_in_coi(&self) -> Option<f64> {
        let (sum, count) = self.cells_in_coi().fold((0.0, 0usize), |(s, c), (j, t)| (s + self.r2[j][t], c + 1));
        (count > 0).then(|| sum / count as f64)
    }

    /// Fraction of in-cone cells with `R^2 >= min_r2`.
    pub fn coherent_fraction(&self, min_r2: f64) -> Option<f64> {
        let (hits, count) = self
            .cells_in_coi()
            .fold((0usize, 0usize), |(h, c), (j, t)| (h + usize::from(self.r2[j][t] >= min_r2), c + 1));
        (count > 0).then(|| hits as f64 / count as f64)
    }
}

fn wrap_phase(angle: f64) -> f64 {
    if angle <= -PI {
        angle + 2.0 * PI
    } else {
        angle
    }
}

/// Coherence of `x` and `y` with standard smoothing.
pub fn wavelet_coherence(x: &TimeSeries, y: &TimeSeries, w: &MotherWavelet, grid: &ScaleGrid) -> Result<CoherenceField> {
    wavelet_coherence_with(x, y, w, grid, Smoothing::Standard)
}

pub fn wavelet_coherence_with(
    x: &TimeSeries,
    y: &TimeSeries,
    w: &MotherWavelet,
    grid: &ScaleGrid,
    smoothing: Smoothing,
) -> Result<CoherenceField> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    if x.dt() != y.dt() {
        return Err(Error::GridMismatch);
    }
    let (wx, wy) = rayon::join(|| cwt(x, w, grid), || cwt(y, w, grid));
    coherence_from_fields(&wx, &wy, smoothing)
}

/// Coherence from two precomputed transforms on the same grid.
pub fn coherence_from_fields(wx: &CwtField, wy: &CwtField, smoothing: Smoothing) -> Result<CoherenceField> {
    let cross = cross_spectrum(wx, wy)?;
    let grid = wx.grid();
    let dt = wx.dt();
    let weighted = |rows: Vec<Vec<Complex64>>| -> Vec<Vec<Complex64>> {
        rows.into_iter().zip(grid.scales()).map(|(r, &s)| r.into_iter().map(|c| c / s).collect()).collect()
    };
    let auto = |f: &CwtField| -> Vec<Vec<Complex64>> {
        f.coeffs().iter().map(|r| r.iter().map(|c| Complex64::new(c.norm_sqr(), 0.0)).collect()).collect()
    };
    let (sxy, sxx, syy) = (weighted(cross.wxy), weighted(auto(wx)), weighted(auto(wy)));
    let (sxy, sxx, syy) = match smoothing {
        Smoothing::Standard => (smooth(&sxy, grid, dt)?, smooth(&sxx, grid, dt)?, smooth(&syy, grid, dt)?),
        Smoothing::None => (sxy, sxx, syy),
    };

    let mut r2 = Vec::with_capacity(grid.len());
    let mut phase = Vec::with_capacity(grid.len());
    for j in 0..grid.len() {
        let (mut r_row, mut p_row) = (Vec::with_capacity(wx.n()), Vec::with_capacity(wx.n()));
        for t in 0..wx.n() {
            let denom = sxx[j][t].re * syy[j][t].re;
            if denom < DENOMINATOR_FLOOR {
                r_row.push(0.0);
                p_row.push(0.0);
            } else {
                let c = sxy[j][t];
                r_row.push(c.norm_sqr() / denom);
                p_row.push(wrap_phase(c.arg()));
            }
        }
        r2.push(r_row);
        phase.push(p_row);
    }

    let descriptor = SmoothingDescriptor {
        kind: smoothing,
        dj: grid.dj(),
        scale_window: match smoothing {
            Smoothing::Standard => scale_window(grid.dj()),
            Smoothing::None => 1,
        },
        truncation: GAUSS_TRUNCATION,
    };
    Ok(CoherenceField {
        r2,
        phase,
        coi: coi(wx.n(), dt, wx.wavelet()),
        grid: grid.clone(),
        smoothing: descriptor,
    })
}

/// Circular mean of phase over coherent cells inside the cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSummary {
    /// `arg sum exp(i*phase)`, in `(-pi, pi]`.
    pub angle: f64,
    /// `|sum exp(i*phase)| / cells`, in `[0, 1]`.
    pub concentration: f64,
    pub cells: usize,
}

pub fn mean_phase_in_coi(cf: &CoherenceField, min_r2: f64) -> Result<PhaseSummary> {
    if !(0.0..1.0).contains(&min_r2) {
        return Err(Error::InvalidThreshold(min_r2));
    }
    let (sum, cells) = cf
        .cells_in_coi()
        .filter(|&(j, t)| cf.r2[j][t] >= min_r2)
        .fold((Complex64::new(0.0, 0.0), 0usize), |(acc, c), (j, t)| {
            (acc + Complex64::from_polar(1.0, cf.phase[j][t]), c + 1)
        });
    if cells == 0 {
        return Err(Error::NoQualifyingCells { min_r2 });
    }
    Ok(PhaseSummary { angle: wrap_phase(sum.arg()), concentration: sum.norm() / cells as f64, cells })
}

/// A relative-phase arrow. Angle `0` points right (in phase), `+-pi` left
/// (anti-phase), `pi/2` up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseArrow {
    pub t_index: usize,
    pub s_index: usize,
    pub angle: f64,
}

/// Arrows on a `stride_t x stride_s` lattice, kept where the cell is inside the
/// cone and `R^2 >= min_r2`. Strides of zero are treated as one.
pub fn phase_arrows(cf: &CoherenceField, stride_t: usize, stride_s: usize, min_r2: f64) -> Vec<PhaseArrow> {
    let (stride_t, stride_s) = (stride_t.max(1), stride_s.max(1));
    let mut arrows = Vec::new();
    for (j, &s) in cf.grid.scales().iter().enumerate().step_by(stride_s) {
        for t in (0..cf.n_times()).step_by(stride_t) {
            if cf.coi.contains(t, s) && cf.r2[j][t] >= min_r2 {
                arrows.push(PhaseArrow { t_index: t, s_index: j, angle: cf.phase[j][t] });
            }
        }
    }
    arrows
}

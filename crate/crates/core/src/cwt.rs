//! Continuous wavelet transform, scalograms, and the cone of influence.
//!
//! The transform of a series `x` sampled every `dt` days is
//!
//! ```text
//! W(s, t) = dt / sqrt(s) * sum_n x[n] * conj(psi((n - t) * dt / s))
//! ```
//!
//! for every scale `s` of a geometric [`ScaleGrid`] and every sample `t`. Each
//! row is evaluated as a cross-correlation in the frequency domain, with the
//! series zero-padded to the next power of two at least `2n` so the circular
//! product reproduces the linear sum exactly. The series is demeaned first.
//!
//! Two complex mother wavelets are supported:
//!
//! * Morlet, `pi^(-1/4) * exp(i*w0*t) * exp(-t^2/2)`;
//! * `cgau2`, the second derivative of `exp(-i*t) * exp(-t^2)`, i.e.
//!   `C * (4t^2 + 4it - 3) * exp(-it - t^2)` with `C` fixed by unit energy.

use std::f64::consts::{PI, SQRT_2, TAU};
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fourier::{fft_forward, fft_inverse};
use crate::series::{demeaned_values, TimeSeries};

/// Half-width of the integration window used for wavelet quadratures.
const QUAD_HALF_WIDTH: f64 = 12.0;
const QUAD_INTERVALS: usize = 4800;

/// Tolerance on the unit-energy and zero-mean checks made at construction.
pub const ADMISSIBILITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveletKind {
    Morlet { omega0: f64 },
    Cgau2,
}

impl WaveletKind {
    /// The wavelet formula before energy normalization.
    fn shape(self, t: f64) -> Complex64 {
        match self {
            WaveletKind::Morlet { omega0 } => Complex64::from_polar((-0.5 * t * t).exp(), omega0 * t),
            WaveletKind::Cgau2 => {
                Complex64::new(4.0 * t * t - 3.0, 4.0 * t) * Complex64::from_polar((-t * t).exp(), -t)
            }
        }
    }

    /// Frequency (rad per unit nondimensional time) of the strongest lobe of
    /// `|psi_hat(omega)|`, `psi_hat(omega) = integral psi(t) exp(-i*omega*t) dt`.
    ///
    /// Both half-axes are searched and the magnitude is returned: `cgau2`
    /// concentrates its energy at negative frequency under this convention.
    pub fn center_frequency(self) -> f64 {
        spectral_peak(self, QUAD_INTERVALS, 0.05)
    }

    pub fn name(self) -> &'static str {
        match self {
            WaveletKind::Morlet { .. } => "morlet",
            WaveletKind::Cgau2 => "cgau2",
        }
    }
}

/// Composite Simpson rule for a complex integrand on `[a, b]`.
fn simpson(f: impl Fn(f64) -> Complex64, a: f64, b: f64, intervals: usize) -> Complex64 {
    let intervals = intervals + intervals % 2;
    let h = (b - a) / intervals as f64;
    let mut acc = f(a) + f(b);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += f(a + i as f64 * h) * w;
    }
    acc * (h / 3.0)
}

fn spectral_peak(kind: WaveletKind, intervals: usize, coarse_step: f64) -> f64 {
    let intervals = intervals + intervals % 2;
    let h = 2.0 * QUAD_HALF_WIDTH / intervals as f64;
    let samples: Vec<(f64, Complex64)> = (0..=intervals)
        .map(|i| {
            let t = -QUAD_HALF_WIDTH + i as f64 * h;
            let w = if i == 0 || i == intervals {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            (t, kind.shape(t) * (w * h / 3.0))
        })
        .collect();
    let transform = |omega: f64| -> f64 {
        samples
            .iter()
            .map(|&(t, v)| v * Complex64::from_polar(1.0, -omega * t))
            .sum::<Complex64>()
            .norm()
    };

    let mut best = (0.0, coarse_step, 1.0);
    let steps = (30.0 / coarse_step).ceil() as usize;
    for i in 1..=steps {
        let omega = i as f64 * coarse_step;
        for sign in [1.0, -1.0] {
            let mag = transform(sign * omega);
            if mag > best.0 {
                best = (mag, omega, sign);
            }
        }
    }
    let (_, omega, sign) = best;
    golden_max(|w| transform(sign * w), (omega - coarse_step).max(0.0), omega + coarse_step, 1e-10)
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - ratio * (hi - lo);
    let mut b = lo + ratio * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > tol {
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + ratio * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - ratio * (hi - lo);
            fa = f(a);
        }
    }
    0.5 * (lo + hi)
}

/// Smallest `t > 0` past the envelope maximum where `|psi(t)|` falls to
/// `1/e` of that maximum.
fn efolding_time(kind: WaveletKind) -> f64 {
    let env = |t: f64| kind.shape(t).norm();
    let step = 1e-3;
    let (mut t_max, mut v_max) = (0.0, env(0.0));
    let mut t = step;
    while t < 6.0 {
        let v = env(t);
        if v > v_max {
            (t_max, v_max) = (t, v);
        }
        t += step;
    }
    let target = v_max / std::f64::consts::E;
    let mut lo = t_max;
    while env(lo + step) > target {
        lo += step;
    }
    let mut hi = lo + step;
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if env(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn cgau2_norm() -> f64 {
    static NORM: OnceLock<f64> = OnceLock::new();
    *NORM.get_or_init(|| {
        let energy = simpson(
            |t| Complex64::new(WaveletKind::Cgau2.shape(t).norm_sqr(), 0.0),
            -QUAD_HALF_WIDTH,
            QUAD_HALF_WIDTH,
            QUAD_INTERVALS,
        );
        1.0 / energy.re.sqrt()
    })
}

/// Normalized mother wavelet with its derived constants.
#[derive(Debug, Clone, PartialEq)]
pub struct MotherWavelet {
    kind: WaveletKind,
    norm: f64,
    center_frequency: f64,
    efolding: f64,
}

impl MotherWavelet {
    /// Builds and checks a wavelet: unit energy and zero mean must hold to
    /// [`ADMISSIBILITY_TOL`]. For Morlet this requires `omega0` above roughly
    /// 5.4; the default is 6.
    pub fn new(kind: WaveletKind) -> Result<Self> {
        let norm = match kind {
            WaveletKind::Morlet { omega0 } => {
                if !(omega0.is_finite() && omega0 > 0.0) {
                    return Err(Error::InvalidWavelet(format!("Morlet omega0 must be positive, got {omega0}")));
                }
                PI.powf(-0.25)
            }
            WaveletKind::Cgau2 => cgau2_norm(),
        };
        let shape = |t: f64| kind.shape(t) * norm;
        let energy = simpson(|t| Complex64::new(shape(t).norm_sqr(), 0.0), -QUAD_HALF_WIDTH, QUAD_HALF_WIDTH, QUAD_INTERVALS).re;
        if (energy - 1.0).abs() > ADMISSIBILITY_TOL {
            return Err(Error::InvalidWavelet(format!("energy {energy} is not 1")));
        }
        let mean = simpson(shape, -QUAD_HALF_WIDTH, QUAD_HALF_WIDTH, QUAD_INTERVALS).norm();
        if mean >= ADMISSIBILITY_TOL {
            return Err(Error::InvalidWavelet(format!(
                "{} has mean {mean:.3e}, above the admissibility tolerance",
                kind.name()
            )));
        }
        let (center_frequency, efolding) = match kind {
            WaveletKind::Morlet { .. } => (kind.center_frequency(), SQRT_2),
            WaveletKind::Cgau2 => {
                static CONSTS: OnceLock<(f64, f64)> = OnceLock::new();
                *CONSTS.get_or_init(|| (kind.center_frequency(), efolding_time(kind)))
            }
        };
        Ok(Self { kind, norm, center_frequency, efolding })
    }

    pub fn morlet(omega0: f64) -> Result<Self> {
        Self::new(WaveletKind::Morlet { omega0 })
    }

    pub fn cgau2() -> Result<Self> {
        Self::new(WaveletKind::Cgau2)
    }

    pub fn kind(&self) -> WaveletKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    /// Energy normalization constant (`pi^(-1/4)` for Morlet).
    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn value(&self, t: f64) -> Complex64 {
        self.kind.shape(t) * self.norm
    }

    pub fn center_frequency(&self) -> f64 {
        self.center_frequency
    }

    /// Lag at which `|psi|` decays to `1/e` of its peak (`sqrt(2)` for Morlet).
    pub fn efolding_time(&self) -> f64 {
        self.efolding
    }

    /// Equivalent Fourier period of scale `s`.
    pub fn scale_to_period(&self, s: f64) -> f64 {
        s * self.period_factor()
    }

    pub fn period_to_scale(&self, period: f64) -> f64 {
        period / self.period_factor()
    }

    fn period_factor(&self) -> f64 {
        match self.kind {
            WaveletKind::Morlet { omega0 } => 4.0 * PI / (omega0 + (2.0 + omega0 * omega0).sqrt()),
            WaveletKind::Cgau2 => TAU / self.center_frequency,
        }
    }
}

pub fn wavelet_value(w: &MotherWavelet, t: f64) -> Complex64 {
    w.value(t)
}

pub fn center_frequency(w: &MotherWavelet) -> f64 {
    w.center_frequency()
}

/// Morlet: `4*pi*s / (w0 + sqrt(2 + w0^2))`. cgau2: `2*pi*s / center_frequency`.
pub fn scale_to_period(s: f64, w: &MotherWavelet) -> f64 {
    w.scale_to_period(s)
}

/// Geometric scales `s0 * 2^(j*dj)`, in days.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleGrid {
    scales: Vec<f64>,
    s0: f64,
    dj: f64,
}

impl ScaleGrid {
    /// `count` scales starting at `s0`, spaced `dj` octaves apart.
    pub fn geometric(s0: f64, dj: f64, count: usize) -> Result<Self> {
        if !(dj.is_finite() && dj > 0.0) {
            return Err(Error::InvalidResolution(format!("dj must be positive, got {dj}")));
        }
        if !(s0.is_finite() && s0 > 0.0) || count == 0 {
            return Err(Error::InvalidResolution(format!("need s0 > 0 and at least one scale, got s0={s0}")));
        }
        let scales = (0..count).map(|j| s0 * (j as f64 * dj).exp2()).collect();
        Ok(Self { scales, s0, dj })
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn s0(&self) -> f64 {
        self.s0
    }

    pub fn dj(&self) -> f64 {
        self.dj
    }

    pub fn len(&self) -> usize {
        self.scales.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scales.is_empty()
    }
}

/// Scales `j = 0..=J`, `J = floor(log2(n*dt/s0) / dj)`, so the largest scale
/// does not exceed the series duration.
pub fn make_scale_grid(n: usize, dt: f64, dj: f64, s0: f64) -> Result<ScaleGrid> {
    if !(dj.is_finite() && dj > 0.0) {
        return Err(Error::InvalidResolution(format!("dj must be positive, got {dj}")));
    }
    if !(s0.is_finite() && dt.is_finite() && dt > 0.0 && s0 >= 2.0 * dt) {
        return Err(Error::InvalidResolution(format!("s0 = {s0} is below 2*dt = {}", 2.0 * dt)));
    }
    let span = n as f64 * dt / s0;
    if span < 1.0 {
        return Err(Error::InvalidResolution(format!("series duration {} is shorter than s0 = {s0}", n as f64 * dt)));
    }
    // The small allowance keeps exact powers of two (n*dt/s0 = 2^J) on the grid.
    let j_max = (span.log2() / dj + 1e-9).floor() as usize;
    ScaleGrid::geometric(s0, dj, j_max + 1)
}

/// Complex coefficients, one row per scale and one column per sample.
#[derive(Debug, Clone, PartialEq)]
pub struct CwtField {
    coeffs: Vec<Vec<Complex64>>,
    grid: ScaleGrid,
    wavelet: MotherWavelet,
    dt: f64,
    n: usize,
}

impl CwtField {
    /// Wraps an externally computed coefficient matrix.
    pub fn from_parts(coeffs: Vec<Vec<Complex64>>, grid: ScaleGrid, wavelet: MotherWavelet, dt: f64) -> Result<Self> {
        let n = coeffs.first().map_or(0, Vec::len);
        if coeffs.len() != grid.len() || coeffs.iter().any(|r| r.len() != n) || n == 0 {
            return Err(Error::GridMismatch);
        }
        if coeffs.iter().flatten().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidSeries("non-finite wavelet coefficient".into()));
        }
        Ok(Self { coeffs, grid, wavelet, dt, n })
    }

    /// `coeffs()[scale][time]`.
    pub fn coeffs(&self) -> &[Vec<Complex64>] {
        &self.coeffs
    }

    pub fn grid(&self) -> &ScaleGrid {
        &self.grid
    }

    pub fn wavelet(&self) -> &MotherWavelet {
        &self.wavelet
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|W|^2`, scale-major.
    pub fn power(&self) -> Vec<Vec<f64>> {
        self.coeffs.iter().map(|r| r.iter().map(|c| c.norm_sqr()).collect()).collect()
    }

    pub fn same_layout(&self, other: &CwtField) -> bool {
        self.n == other.n && self.dt == other.dt && self.grid == other.grid
    }
}

/// Transforms the demeaned series on every scale of `grid`.
pub fn cwt(ts: &TimeSeries, w: &MotherWavelet, grid: &ScaleGrid) -> CwtField {
    let x = demeaned_values(ts.values());
    let n = x.len();
    let dt = ts.dt();
    let m = (2 * n).next_power_of_two();
    let mut spectrum = vec![Complex64::new(0.0, 0.0); m];
    for (slot, v) in spectrum.iter_mut().zip(&x) {
        slot.re = *v;
    }
    fft_forward(&mut spectrum);

    let coeffs = grid
        .scales()
        .par_iter()
        .map(|&s| {
            // Wavelet sampled at lags -(n-1)..=(n-1), stored circularly.
            let mut kernel = vec![Complex64::new(0.0, 0.0); m];
            for k in 0..n {
                let lag = k as f64 * dt / s;
                kernel[k] = w.value(lag);
                if k > 0 {
                    kernel[m - k] = w.value(-lag);
                }
            }
            fft_forward(&mut kernel);
            let mut row: Vec<Complex64> = spectrum.iter().zip(&kernel).map(|(a, b)| a * b.conj()).collect();
            fft_inverse(&mut row);
            let scale = dt / s.sqrt();
            row.truncate(n);
            row.iter_mut().for_each(|c| *c *= scale);
            row
        })
        .collect();
    CwtField { coeffs, grid: grid.clone(), wavelet: w.clone(), dt, n }
}

/// Percent-of-energy map and the scales at which energy peaks.
#[derive(Debug, Clone, PartialEq)]
pub struct Scalogram {
    /// `100 * |W(s,t)|^2 / sum |W|^2`, scale-major.
    pub percent: Vec<Vec<f64>>,
    /// Time-marginal energy `E(s) = sum_t |W(s,t)|^2`.
    pub scale_energy: Vec<f64>,
    /// Grid indices of the dominant scales, strongest first.
    pub dominant_indices: Vec<usize>,
    /// Scale values for `dominant_indices`.
    pub dominant_scales: Vec<f64>,
}

pub const MAX_DOMINANT_SCALES: usize = 5;

/// Local maxima of `E(s)` weaker than this fraction of the strongest scale are
/// boundary ripple, not ridges.
pub const RIDGE_FLOOR: f64 = 0.01;

/// Normalizes `|W|^2` to percent of the total and finds up to five strict
/// interior local maxima of the time-marginal energy, strongest first.
///
/// Maxima below [`RIDGE_FLOOR`] times the largest marginal energy are skipped.
pub fn scalogram(field: &CwtField) -> Result<Scalogram> {
    let power = field.power();
    let scale_energy: Vec<f64> = power.iter().map(|r| r.iter().sum()).collect();
    let total: f64 = scale_energy.iter().sum();
    if !(total > 0.0) {
        return Err(Error::EmptyField);
    }
    let percent = power.iter().map(|r| r.iter().map(|p| 100.0 * p / total).collect()).collect();

    let floor = RIDGE_FLOOR * scale_energy.iter().fold(0.0f64, |m, e| m.max(*e));
    let mut peaks: Vec<usize> = (1..scale_energy.len().saturating_sub(1))
        .filter(|&j| scale_energy[j] > scale_energy[j - 1] && scale_energy[j] > scale_energy[j + 1])
        .filter(|&j| scale_energy[j] >= floor)
        .collect();
    peaks.sort_by(|&a, &b| scale_energy[b].total_cmp(&scale_energy[a]));
    peaks.truncate(MAX_DOMINANT_SCALES);
    let dominant_scales = peaks.iter().map(|&j| field.grid.scales[j]).collect();
    Ok(Scalogram { percent, scale_energy, dominant_indices: peaks, dominant_scales })
}

/// Largest trustworthy scale at each sample; edge effects dominate above it.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeOfInfluence {
    pub max_trusted_scale: Vec<f64>,
}

impl ConeOfInfluence {
    /// Whether `(time index, scale)` lies inside the cone (trusted region).
    pub fn contains(&self, t: usize, scale: f64) -> bool {
        scale <= self.max_trusted_scale[t]
    }
}

/// `dt * min(t, n-1-t) / efolding_time`.
pub fn coi(n: usize, dt: f64, w: &MotherWavelet) -> ConeOfInfluence {
    let f = w.efolding_time();
    let max_trusted_scale = (0..n).map(|t| dt * t.min(n - 1 - t) as f64 / f).collect();
    ConeOfInfluence { max_trusted_scale }
}

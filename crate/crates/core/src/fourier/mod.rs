//! Discrete Fourier analysis: spectra, coefficient scatter, and periodograms.
//!
//! The forward transform is unnormalized,
//! `X_k = sum_n x_n exp(-2*pi*i*k*n/N)`, and bin `k` sits at frequency
//! `k / (N * dt)` cycles per day. No window, taper, or zero padding is applied,
//! so recovered periods are quantized to `N * dt / k`.

mod fft;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use fft::{fft_forward, fft_inverse};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Fourier coefficients of a real series together with their frequency axis.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSpectrum {
    coeffs: Vec<Complex64>,
    freqs: Vec<f64>,
    dt: f64,
}

impl FourierSpectrum {
    fn from_coeffs(coeffs: Vec<Complex64>, dt: f64) -> Self {
        let n = coeffs.len();
        let freqs = (0..n).map(|k| k as f64 / (n as f64 * dt)).collect();
        Self { coeffs, freqs, dt }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `f_k = k / (N * dt)` for every bin `k = 0..N`.
    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }
}

/// Direct `O(N^2)` evaluation of the DFT sum.
pub fn dft_naive(ts: &TimeSeries) -> FourierSpectrum {
    let x = ts.values();
    let n = x.len();
    let coeffs = (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(j, &v)| {
                    // (k * j) mod N keeps the angle in [0, 2*pi).
                    let angle = -2.0 * PI * ((k * j) % n) as f64 / n as f64;
                    Complex64::from_polar(v, angle)
                })
                .sum()
        })
        .collect();
    FourierSpectrum::from_coeffs(coeffs, ts.dt())
}

/// Fast transform of any length (radix-2, or Bluestein for other lengths).
pub fn fft(ts: &TimeSeries) -> FourierSpectrum {
    let mut buf: Vec<Complex64> = ts.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_forward(&mut buf);
    FourierSpectrum::from_coeffs(buf, ts.dt())
}

/// `(re, im)` of every coefficient `k = 1..N`, DC excluded, in bin order.
pub fn coefficient_scatter(spec: &FourierSpectrum) -> Vec<(f64, f64)> {
    spec.coeffs[1..].iter().map(|c| (c.re, c.im)).collect()
}

/// Power-weighted relative spread of coefficient radii.
///
/// With `r_k = |X_k|` and weights `w_k = |X_k|^2` over `k >= 1`, returns
/// `sqrt(sum w (r - rbar)^2 / sum w) / rbar` where `rbar = sum w r / sum w`.
/// Zero when every nonzero coefficient has the same magnitude (a pure tone);
/// larger when power is smeared across many radii.
///
/// Non-DC coefficients at rounding level (amplitude below `1e-12` of the
/// overall spectrum) count as zero.
pub fn scatter_dispersion(spec: &FourierSpectrum) -> Result<f64> {
    let radii: Vec<f64> = spec.coeffs[1..].iter().map(|c| c.norm()).collect();
    let total: f64 = radii.iter().map(|r| r * r).sum();
    let dc = spec.coeffs[0].norm_sqr();
    if !(total > 1e-24 * (total + dc)) {
        return Err(Error::DegenerateSpectrum);
    }
    let mean_r = radii.iter().map(|r| r * r * r).sum::<f64>() / total;
    let var = radii.iter().map(|r| r * r * (r - mean_r).powi(2)).sum::<f64>() / total;
    Ok(var.sqrt() / mean_r)
}

/// One-sided Fourier power with the dominant non-DC peak.
#[derive(Debug, Clone, PartialEq)]
pub struct Periodogram {
    power: Vec<f64>,
    freqs: Vec<f64>,
    n: usize,
    dt: f64,
    dominant_bin: usize,
}

impl Periodogram {
    /// `P_k = |X_k|^2` for `k = 0..=N/2`.
    pub fn power(&self) -> &[f64] {
        &self.power
    }

    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    /// Length of the transformed series.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn dominant_bin(&self) -> usize {
        self.dominant_bin
    }

    pub fn dominant_frequency(&self) -> f64 {
        self.freqs[self.dominant_bin]
    }

    pub fn dominant_period(&self) -> f64 {
        dominant_period(self)
    }

    /// Up to `count` non-DC bins in descending power (ties to the lower bin).
    pub fn top_bins(&self, count: usize) -> Vec<usize> {
        let mut bins: Vec<usize> = (1..self.power.len()).collect();
        bins.sort_by(|&a, &b| self.power[b].total_cmp(&self.power[a]).then(a.cmp(&b)));
        bins.truncate(count);
        bins
    }

    /// Period in days of bin `k >= 1`.
    pub fn period_of(&self, k: usize) -> f64 {
        self.n as f64 * self.dt / k as f64
    }
}

/// Fourier power on bins `0..=N/2` with the strongest non-DC bin located.
///
/// Ties resolve to the lowest bin. A spectrum whose non-DC power is
/// everywhere at most `1e-12` of the DC power has no meaningful peak.
pub fn periodogram(spec: &FourierSpectrum) -> Result<Periodogram> {
    let n = spec.n();
    if n < 4 {
        return Err(Error::TooShort { len: n });
    }
    let half = n / 2;
    let power: Vec<f64> = spec.coeffs[..=half].iter().map(|c| c.norm_sqr()).collect();
    let dominant_bin = argmax_non_dc(&power);
    if power[dominant_bin] <= 1e-12 * power[0] || power[dominant_bin] == 0.0 {
        return Err(Error::NoDominantPeak);
    }
    Ok(Periodogram {
        freqs: spec.freqs[..=half].to_vec(),
        power,
        n,
        dt: spec.dt,
        dominant_bin,
    })
}

/// First index of the largest value among `power[1..]`.
fn argmax_non_dc(power: &[f64]) -> usize {
    let mut best = 1;
    for k in 2..power.len() {
        if power[k] > power[best] {
            best = k;
        }
    }
    best
}

/// Inverts the dominant frequency: `N * dt / dominant_bin` days.
pub fn dominant_period(pg: &Periodogram) -> f64 {
    pg.period_of(pg.dominant_bin)
}

//! Deterministic synthetic sinusoid-plus-noise generator.
//!
//! Noise comes from ChaCha8 seeded with a 64-bit seed, shaped to a normal
//! distribution by `rand_distr`'s ziggurat sampler. Both algorithms are
//! platform independent, so a given `(inputs, seed)` always yields the same
//! bits.

use std::f64::consts::TAU;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// One planted oscillation `amplitude * sin(2*pi*t/period + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineComponent {
    /// Period in days.
    pub period: f64,
    pub amplitude: f64,
    /// Phase in radians.
    pub phase: f64,
}

impl SineComponent {
    pub fn new(period: f64, amplitude: f64, phase: f64) -> Self {
        Self { period, amplitude, phase }
    }
}

/// Parameters for [`generate`].
#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub n: usize,
    pub dt: f64,
    pub components: Vec<SineComponent>,
    pub offset: f64,
    pub noise_std: f64,
    pub seed: u64,
}

impl SynthSpec {
    /// `n` samples at `dt` with no components, offset, or noise.
    pub fn new(n: usize, dt: f64) -> Self {
        Self { n, dt, components: Vec::new(), offset: 0.0, noise_std: 0.0, seed: 0 }
    }

    pub fn component(mut self, period: f64, amplitude: f64, phase: f64) -> Self {
        self.components.push(SineComponent::new(period, amplitude, phase));
        self
    }

    pub fn offset(mut self, offset: f64) -> Self {
        self.offset = offset;
        self
    }

    pub fn noise(mut self, noise_std: f64, seed: u64) -> Self {
        self.noise_std = noise_std;
        self.seed = seed;
        self
    }

    pub fn generate(&self) -> Result<TimeSeries> {
        generate(self)
    }
}

/// Evaluates `offset + sum_i amp_i * sin(2*pi*t*dt/period_i + phase_i) + noise_t`
/// for `t = 0..n`.
pub fn generate(spec: &SynthSpec) -> Result<TimeSeries> {
    if spec.n < 2 {
        return Err(Error::TooShort { len: spec.n });
    }
    if !(spec.dt.is_finite() && spec.dt > 0.0) {
        return Err(Error::InvalidSeries(format!("sample interval must be positive, got {}", spec.dt)));
    }
    if !(spec.noise_std.is_finite() && spec.noise_std >= 0.0) {
        return Err(Error::InvalidSeries(format!("noise std must be >= 0, got {}", spec.noise_std)));
    }
    let limit = 2.0 * spec.dt;
    for c in &spec.components {
        if !(c.period.is_finite() && c.period > limit) {
            return Err(Error::NyquistViolation { period: c.period, limit });
        }
        if !(c.amplitude.is_finite() && c.amplitude >= 0.0 && c.phase.is_finite()) {
            return Err(Error::InvalidSeries(format!("bad component {c:?}")));
        }
    }

    let mut values: Vec<f64> = (0..spec.n)
        .map(|t| {
            let time = t as f64 * spec.dt;
            spec.offset
                + spec
                    .components
                    .iter()
                    .map(|c| c.amplitude * (TAU * time / c.period + c.phase).sin())
                    .sum::<f64>()
        })
        .collect();

    if spec.noise_std > 0.0 {
        let normal = Normal::new(0.0, spec.noise_std).expect("validated std");
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        for v in &mut values {
            *v += normal.sample(&mut rng);
        }
    }
    TimeSeries::new(values, spec.dt, "synthetic")
}

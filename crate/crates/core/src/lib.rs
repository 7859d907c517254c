//! Fourier and wavelet tools for comparing seasonal time series.
//!
//! The crate covers the whole comparison pipeline for two uniformly sampled
//! series (say, daily wind speed in summer and in winter):
//!
//! * [`series`]: ingestion, validation, and summary statistics.
//! * [`synth`]: seeded sinusoid-plus-noise generator used as ground truth.
//! * [`fourier`]: arbitrary-length FFT, coefficient scatter, periodogram and
//!   dominant period.
//! * [`dwt`]: Haar and Daubechies-4 filter banks with multilevel
//!   decomposition and exact reconstruction.
//! * [`cwt`]: Morlet and complex-Gaussian continuous wavelet transforms,
//!   scalograms, and the cone of influence.
//! * [`coherence`]: cross-wavelet spectrum, smoothed wavelet coherence and
//!   relative phase.
//!
//! ```
//! use seasonwave::{fourier, synth::SynthSpec};
//!
//! let summer = SynthSpec::new(60, 1.0).component(20.0, 1.5, 0.0).offset(4.0).generate()?;
//! let pg = fourier::periodogram(&fourier::fft(&summer))?;
//! assert_eq!(pg.dominant_period(), 20.0);
//! # Ok::<(), seasonwave::Error>(())
//! ```

pub mod coherence;
pub mod error;
pub mod fourier;
pub mod cwt;
pub mod dwt;
pub mod numfmt;
pub mod series;
pub mod synth;

pub use error::{Error, Result};
pub use series::{SummaryStats, TimeSeries};

use thiserror::Error;

/// Errors raised by the analysis pipeline.
///
/// Every variant has a stable name available through [`Error::code`], which the
/// command-line front end prints alongside the message.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("could not parse a number on line {line}: {text:?}")]
    Parse { line: usize, text: String },

    #[error("non-finite value on line {line}")]
    NonFinite { line: usize },

    #[error("series has {len} samples, at least 2 are required")]
    TooShort { len: usize },

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("period {period} is not above the Nyquist limit 2*dt = {limit}")]
    NyquistViolation { period: f64, limit: f64 },

    #[error("all non-DC Fourier coefficients are zero")]
    DegenerateSpectrum,

    #[error("no periodogram bin above DC carries measurable power")]
    NoDominantPeak,

    #[error("series of length {len} cannot be decomposed to {levels} levels")]
    TooManyLevels { len: usize, levels: usize },

    #[error("decomposition length bookkeeping does not chain: {0}")]
    InconsistentLengths(String),

    #[error("invalid scale grid: {0}")]
    InvalidResolution(String),

    #[error("invalid mother wavelet: {0}")]
    InvalidWavelet(String),

    #[error("all wavelet coefficients are zero")]
    EmptyField,

    #[error("wavelet fields were computed on different grids")]
    GridMismatch,

    #[error("series lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("coherence threshold must lie in [0, 1), got {0}")]
    InvalidThreshold(f64),

    #[error("no cell inside the cone of influence has coherence >= {min_r2}")]
    NoQualifyingCells { min_r2: f64 },
}

impl Error {
    /// Stable variant name, e.g. `"NoDominantPeak"`.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::NonFinite { .. } => "NonFinite",
            Error::TooShort { .. } => "TooShort",
            Error::InvalidSeries(_) => "InvalidSeries",
            Error::NyquistViolation { .. } => "NyquistViolation",
            Error::DegenerateSpectrum => "DegenerateSpectrum",
            Error::NoDominantPeak => "NoDominantPeak",
            Error::TooManyLevels { .. } => "TooManyLevels",
            Error::InconsistentLengths(_) => "InconsistentLengths",
            Error::InvalidResolution(_) => "InvalidResolution",
            Error::InvalidWavelet(_) => "InvalidWavelet",
            Error::EmptyField => "EmptyField",
            Error::GridMismatch => "GridMismatch",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::InvalidThreshold(_) => "InvalidThreshold",
            Error::NoQualifyingCells { .. } => "NoQualifyingCells",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

//! Uniformly sampled series, CSV ingestion, and descriptive statistics.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::numfmt::format_sig17;

/// A uniformly sampled, finite, real-valued series.
///
/// Sampling is implied by `dt` (in days); no per-sample timestamps are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    dt: f64,
    label: String,
}

impl TimeSeries {
    /// Builds a series, checking that it has at least two finite samples and a
    /// positive, finite sample interval.
    pub fn new(values: Vec<f64>, dt: f64, label: impl Into<String>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooShort { len: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { line: i + 1 });
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidSeries(format!("sample interval must be positive, got {dt}")));
        }
        Ok(Self { values, dt, label: label.into() })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always `false`; a valid series has at least two samples.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Total covered duration `n * dt`.
    pub fn duration(&self) -> f64 {
        self.values.len() as f64 * self.dt
    }

    /// Returns a copy with a different label.
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Applies `f` to every sample. The result must stay finite.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.values.iter().map(|&v| f(v)).collect(), self.dt, self.label.clone())
    }
}

/// Population statistics of a series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub n: usize,
    pub mean: f64,
    /// Population standard deviation (divides by `n`).
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

/// Reads a series from CSV text.
///
/// Each non-empty line is either `value` or `date,value`; the date column is
/// ignored and sampling is taken to be uniform at `dt`. Blank lines and lines
/// starting with `#` are skipped. Line numbers in errors are 1-based.
pub fn load_csv<R: BufRead>(source: R, dt: f64, label: &str) -> Result<TimeSeries> {
    let mut values = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Parse { line: line_no, text: e.to_string() })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let field = match trimmed.split(',').collect::<Vec<_>>().as_slice() {
            [value] => *value,
            [_date, value] => *value,
            _ => return Err(Error::Parse { line: line_no, text: trimmed.to_string() }),
        };
        let value: f64 = field
            .trim()
            .parse()
            .map_err(|_| Error::Parse { line: line_no, text: field.trim().to_string() })?;
        if !value.is_finite() {
            return Err(Error::NonFinite { line: line_no });
        }
        values.push(value);
    }
    if values.len() < 2 {
        return Err(Error::TooShort { len: values.len() });
    }
    TimeSeries::new(values, dt, label)
}

/// Writes the canonical CSV form: one value per line, 17 significant digits.
pub fn write_csv<W: Write>(ts: &TimeSeries, mut out: W) -> std::io::Result<()> {
    for v in ts.values() {
        writeln!(out, "{}", format_sig17(*v))?;
    }
    Ok(())
}

/// Single-pass (Welford) population statistics.
pub fn summary_stats(ts: &TimeSeries) -> SummaryStats {
    let mut mean = 0.0;
    let mut m2 = 0.0;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for (i, &x) in ts.values().iter().enumerate() {
        let delta = x - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (x - mean);
        min = min.min(x);
        max = max.max(x);
    }
    let n = ts.len();
    // Rounding can push the running mean a hair outside [min, max].
    let mean = mean.clamp(min, max);
    SummaryStats { n, mean, std: (m2 / n as f64).max(0.0).sqrt(), min, max }
}

/// Subtracts the arithmetic mean from every sample.
pub fn demean(ts: &TimeSeries) -> TimeSeries {
    let values = demeaned_values(ts.values());
    TimeSeries { values, dt: ts.dt, label: ts.label.clone() }
}

pub(crate) fn demeaned_values(values: &[f64]) -> Vec<f64> {
    if values.iter().all(|v| *v == values[0]) {
        return vec![0.0; values.len()];
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let centred: Vec<f64> = values.iter().map(|v| v - mean).collect();
    // A second correction pass removes the residual left by the first
    // subtraction's rounding.
    let residual = centred.iter().sum::<f64>() / centred.len() as f64;
    centred.into_iter().map(|v| v - residual).collect()
}

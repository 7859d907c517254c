//! The per-series pipeline and the two-series coherence step.

use seasonwave::coherence::{self, CoherenceField, PhaseArrow, PhaseSummary};
use seasonwave::cwt::{self, ConeOfInfluence, CwtField, MotherWavelet, Scalogram, WaveletKind};
use seasonwave::dwt::{self, DwtDecomposition, Extension, WaveletName};
use seasonwave::fourier::{self, FourierSpectrum, Periodogram};
use seasonwave::series::{self, SummaryStats};
use seasonwave::{Error, Result, TimeSeries};

/// Everything that determines the numbers in a report.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub levels: usize,
    pub filters: Vec<WaveletName>,
    pub extension: Extension,
    pub cwt_wavelet: WaveletKind,
    pub dj: f64,
    /// Smallest scale as a multiple of `dt`.
    pub s0_factor: f64,
}

impl AnalysisConfig {
    pub fn s0(&self, dt: f64) -> f64 {
        self.s0_factor * dt
    }
}

#[derive(Debug, Clone)]
pub struct SeriesAnalysis {
    pub series: TimeSeries,
    pub stats: SummaryStats,
    pub spectrum: FourierSpectrum,
    pub periodogram: Periodogram,
    pub dispersion: f64,
    pub dwt: Vec<DwtDecomposition>,
    pub cwt: CwtField,
    pub scalogram: Scalogram,
    pub coi: ConeOfInfluence,
}

pub fn analyze_series(series: TimeSeries, cfg: &AnalysisConfig) -> Result<SeriesAnalysis> {
    let stats = series::summary_stats(&series);
    let spectrum = fourier::fft(&series);
    let periodogram = fourier::periodogram(&spectrum)?;
    let dispersion = fourier::scatter_dispersion(&spectrum)?;
    let dwt = cfg
        .filters
        .iter()
        .map(|&name| dwt::wavedec(&series, &dwt::filter_bank(name), cfg.levels, cfg.extension))
        .collect::<Result<Vec<_>>>()?;
    let wavelet = MotherWavelet::new(cfg.cwt_wavelet)?;
    let grid = cwt::make_scale_grid(series.len(), series.dt(), cfg.dj, cfg.s0(series.dt()))?;
    let field = cwt::cwt(&series, &wavelet, &grid);
    let scalogram = cwt::scalogram(&field)?;
    let coi = cwt::coi(series.len(), series.dt(), &wavelet);
    Ok(SeriesAnalysis { series, stats, spectrum, periodogram, dispersion, dwt, cwt: field, scalogram, coi })
}

#[derive(Debug, Clone)]
pub struct CoherenceAnalysis {
    pub wavelet: MotherWavelet,
    pub field: CoherenceField,
    pub min_r2: f64,
    pub stride: usize,
    /// `None` when no in-cone cell reaches `min_r2`.
    pub phase: Option<PhaseSummary>,
    pub arrows: Vec<PhaseArrow>,
}

pub fn analyze_pair(
    x: &TimeSeries,
    y: &TimeSeries,
    kind: WaveletKind,
    cfg: &AnalysisConfig,
    min_r2: f64,
    stride: usize,
) -> Result<CoherenceAnalysis> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    let wavelet = MotherWavelet::new(kind)?;
    let grid = cwt::make_scale_grid(x.len(), x.dt(), cfg.dj, cfg.s0(x.dt()))?;
    let field = coherence::wavelet_coherence(x, y, &wavelet, &grid)?;
    let phase = match coherence::mean_phase_in_coi(&field, min_r2) {
        Ok(p) => Some(p),
        Err(Error::NoQualifyingCells { .. }) => None,
        Err(e) => return Err(e),
    };
    let arrows = coherence::phase_arrows(&field, stride, stride, min_r2);
    Ok(CoherenceAnalysis { wavelet, field, min_r2, stride: stride.max(1), phase, arrows })
}

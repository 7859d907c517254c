//! `report.json` layout. The matching JSON Schema lives in
//! `schema/report.schema.json`.

use serde::Serialize;

use crate::analysis::{AnalysisConfig, CoherenceAnalysis, SeriesAnalysis};
use seasonwave::cwt::WaveletKind;
use seasonwave::dwt;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "seasonwave";

/// Periodogram peaks listed per series.
pub const TOP_PEAKS: usize = 5;

pub const ARROW_CONVENTION: &str =
    "angle in radians: 0 points right (in phase), +-pi points left (anti-phase), +pi/2 points up";

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: Tool,
    /// Wall-clock time of the run; the only field that varies between
    /// otherwise identical runs.
    pub generated_at_unix_s: u64,
    pub config: ConfigEcho,
    pub series: Vec<SeriesBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coherence: Option<CoherenceBlock>,
}

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

impl Tool {
    pub fn current() -> Self {
        Tool { name: TOOL_NAME, version: env!("CARGO_PKG_VERSION") }
    }
}

/// Every option that affects the report. Output location and plotting do not.
#[derive(Debug, Serialize)]
pub struct ConfigEcho {
    pub command: &'static str,
    pub inputs: Vec<String>,
    pub dt: f64,
    pub levels: usize,
    pub wavelets: Vec<&'static str>,
    pub dwt_extension: &'static str,
    pub cwt_wavelet: &'static str,
    pub omega0: f64,
    pub dj: f64,
    pub s0: f64,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coherence_wavelet: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_r2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stride: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct SeriesBlock {
    pub label: String,
    pub summary: Summary,
    pub fourier: FourierBlock,
    pub dwt: Vec<DwtBlock>,
    pub cwt: CwtBlock,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Serialize)]
pub struct FourierBlock {
    /// Power-weighted relative spread of coefficient magnitudes.
    pub scatter_dispersion: f64,
    pub dominant_bin: usize,
    pub dominant_frequency: f64,
    pub dominant_period_days: f64,
    /// `1 / (n * dt)`; detected periods are quantized to `n * dt / k`.
    pub frequency_resolution: f64,
    pub peaks: Vec<Peak>,
}

#[derive(Debug, Serialize)]
pub struct Peak {
    pub bin: usize,
    pub frequency: f64,
    pub period_days: f64,
    pub power: f64,
}

#[derive(Debug, Serialize)]
pub struct DwtBlock {
    pub wavelet: &'static str,
    pub extension: &'static str,
    pub levels: usize,
    /// Input length of each analysis stage.
    pub stage_lengths: Vec<usize>,
    /// Detail lengths finest first, then the approximation length.
    pub coefficient_lengths: Vec<usize>,
    pub bands: Vec<Band>,
}

#[derive(Debug, Serialize)]
pub struct Band {
    /// `d1` .. `dL`, then `aL`.
    pub name: String,
    pub energy: f64,
    pub energy_percent: f64,
}

#[derive(Debug, Serialize)]
pub struct CwtBlock {
    pub wavelet: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega0: Option<f64>,
    pub s0: f64,
    pub dj: f64,
    pub scale_count: usize,
    pub max_scale: f64,
    pub efolding_time: f64,
    pub dominant: Vec<DominantScale>,
}

#[derive(Debug, Serialize)]
pub struct DominantScale {
    pub scale: f64,
    pub period_days: f64,
    pub energy_percent: f64,
}

#[derive(Debug, Serialize)]
pub struct CoherenceBlock {
    pub wavelet: &'static str,
    pub min_r2: f64,
    pub stride: usize,
    pub cells_in_coi: usize,
    pub mean_r2_in_coi: Option<f64>,
    pub coherent_fraction: Option<f64>,
    /// In-cone cells with `r2 >= min_r2` that enter the mean phase.
    pub phase_cells: usize,
    pub mean_phase: Option<f64>,
    pub phase_concentration: Option<f64>,
    pub arrow_count: usize,
    pub arrow_convention: &'static str,
}

fn omega0_of(kind: WaveletKind) -> Option<f64> {
    match kind {
        WaveletKind::Morlet { omega0 } => Some(omega0),
        WaveletKind::Cgau2 => None,
    }
}

pub fn config_echo(command: &'static str, inputs: Vec<String>, dt: f64, omega0: f64, seed: Option<u64>, cfg: &AnalysisConfig) -> ConfigEcho {
    ConfigEcho {
        command,
        inputs,
        dt,
        levels: cfg.levels,
        wavelets: cfg.filters.iter().map(|f| f.as_str()).collect(),
        dwt_extension: cfg.extension.as_str(),
        cwt_wavelet: cfg.cwt_wavelet.name(),
        omega0,
        dj: cfg.dj,
        s0: cfg.s0(dt),
        seed,
        coherence_wavelet: None,
        min_r2: None,
        stride: None,
    }
}

pub fn series_block(a: &SeriesAnalysis) -> SeriesBlock {
    let s = &a.stats;
    let pg = &a.periodogram;
    let peaks = pg
        .top_bins(TOP_PEAKS)
        .into_iter()
        .map(|k| Peak { bin: k, frequency: pg.freqs()[k], period_days: pg.period_of(k), power: pg.power()[k] })
        .collect();
    let fourier = FourierBlock {
        scatter_dispersion: a.dispersion,
        dominant_bin: pg.dominant_bin(),
        dominant_frequency: pg.dominant_frequency(),
        dominant_period_days: pg.dominant_period(),
        frequency_resolution: 1.0 / (pg.n() as f64 * pg.dt()),
        peaks,
    };

    let dwt = a
        .dwt
        .iter()
        .map(|dec| {
            let energy = dwt::level_energy(dec);
            let total: f64 = energy.iter().sum();
            let names = (1..=dec.levels).map(|l| format!("d{l}")).chain([format!("a{}", dec.levels)]);
            let bands = names
                .zip(&energy)
                .map(|(name, &e)| Band { name, energy: e, energy_percent: if total > 0.0 { 100.0 * e / total } else { 0.0 } })
                .collect();
            let mut coefficient_lengths = dec.coefficient_lengths();
            coefficient_lengths.push(dec.approx.len());
            DwtBlock {
                wavelet: dec.filter.name.as_str(),
                extension: dec.extension.as_str(),
                levels: dec.levels,
                stage_lengths: dec.lengths.clone(),
                coefficient_lengths,
                bands,
            }
        })
        .collect();

    let w = a.cwt.wavelet();
    let grid = a.cwt.grid();
    let total: f64 = a.scalogram.scale_energy.iter().sum();
    let dominant = a
        .scalogram
        .dominant_indices
        .iter()
        .map(|&j| {
            let scale = grid.scales()[j];
            DominantScale {
                scale,
                period_days: w.scale_to_period(scale),
                energy_percent: 100.0 * a.scalogram.scale_energy[j] / total,
            }
        })
        .collect();
    let cwt = CwtBlock {
        wavelet: w.name(),
        omega0: omega0_of(w.kind()),
        s0: grid.s0(),
        dj: grid.dj(),
        scale_count: grid.len(),
        max_scale: *grid.scales().last().expect("grid is never empty"),
        efolding_time: w.efolding_time(),
        dominant,
    };

    SeriesBlock {
        label: a.series.label().to_string(),
        summary: Summary { n: s.n, mean: s.mean, std: s.std, min: s.min, max: s.max },
        fourier,
        dwt,
        cwt,
    }
}

pub fn coherence_block(c: &CoherenceAnalysis) -> CoherenceBlock {
    CoherenceBlock {
        wavelet: c.wavelet.name(),
        min_r2: c.min_r2,
        stride: c.stride,
        cells_in_coi: c.field.cells_in_coi().count(),
        mean_r2_in_coi: c.field.mean_r2_in_coi(),
        coherent_fraction: c.field.coherent_fraction(c.min_r2),
        phase_cells: c.phase.map_or(0, |p| p.cells),
        mean_phase: c.phase.map(|p| p.angle),
        phase_concentration: c.phase.map(|p| p.concentration),
        arrow_count: c.arrows.len(),
        arrow_convention: ARROW_CONVENTION,
    }
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seasonwave::cwt::WaveletKind;
use seasonwave::dwt::WaveletName;

#[derive(Debug, Parser)]
#[command(name = "seasonwave", version, about = "Fourier and wavelet comparison of seasonal time series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze one series and write report.json (and plots).
    Analyze(AnalyzeArgs),
    /// Analyze two equal-length series and their wavelet coherence.
    Compare(CompareArgs),
    /// Write a seeded sum of sinusoids plus noise as CSV.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DwtChoice {
    Haar,
    Db4,
    Both,
}

impl DwtChoice {
    pub fn filters(self) -> Vec<WaveletName> {
        match self {
            DwtChoice::Haar => vec![WaveletName::Haar],
            DwtChoice::Db4 => vec![WaveletName::Db4],
            DwtChoice::Both => vec![WaveletName::Haar, WaveletName::Db4],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CwtChoice {
    Morlet,
    Cgau2,
}

impl CwtChoice {
    pub fn kind(self, omega0: f64) -> WaveletKind {
        match self {
            CwtChoice::Morlet => WaveletKind::Morlet { omega0 },
            CwtChoice::Cgau2 => WaveletKind::Cgau2,
        }
    }
}

/// Options shared by `analyze` and `compare`.
#[derive(Debug, Clone, Args)]
pub struct AnalysisOpts {
    /// Sample interval in days.
    #[arg(long, default_value_t = 1.0)]
    pub dt: f64,
    /// Discrete wavelet decomposition depth.
    #[arg(long, default_value_t = 5)]
    pub levels: usize,
    /// Discrete wavelet filter bank.
    #[arg(long, value_enum, default_value_t = DwtChoice::Both)]
    pub wavelet: DwtChoice,
    /// Mother wavelet for the scalogram.
    #[arg(long, value_enum, default_value_t = CwtChoice::Morlet)]
    pub cwt_wavelet: CwtChoice,
    /// Morlet central angular frequency.
    #[arg(long, default_value_t = 6.0)]
    pub omega0: f64,
    /// Scale resolution in octaves.
    #[arg(long, default_value_t = 0.125)]
    pub dj: f64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Also write SVG plots.
    #[arg(long)]
    pub plots: bool,
    /// Accepted for symmetry with `synth`; analysis is deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    /// CSV file: one `value` or `date,value` per line.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub opts: AnalysisOpts,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub input2: PathBuf,
    #[command(flatten)]
    pub opts: AnalysisOpts,
    /// Coherence threshold for phase arrows and the mean phase.
    #[arg(long, default_value_t = 0.5)]
    pub min_r2: f64,
    /// Arrow decimation along time and scale.
    #[arg(long, default_value_t = 4)]
    pub stride: usize,
    /// Mother wavelet for coherence.
    #[arg(long, value_enum, default_value_t = CwtChoice::Cgau2)]
    pub coherence_wavelet: CwtChoice,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    /// Number of samples.
    #[arg(long)]
    pub n: usize,
    /// Sample interval in days.
    #[arg(long, default_value_t = 1.0)]
    pub dt: f64,
    /// Component period in days; repeat for several components.
    #[arg(long)]
    pub period: Vec<f64>,
    /// Component amplitude; give none (all 1) or one per period.
    #[arg(long)]
    pub amp: Vec<f64>,
    /// Component phase in radians; give none (all 0) or one per period.
    #[arg(long)]
    pub phase: Vec<f64>,
    /// Constant added to every sample.
    #[arg(long, default_value_t = 0.0)]
    pub offset: f64,
    /// Standard deviation of additive Gaussian noise.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    /// Noise generator seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output CSV; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl SynthArgs {
    /// `(period, amplitude, phase)` triples, or a message when the repeated
    /// flags do not line up.
    pub fn components(&self) -> Result<Vec<(f64, f64, f64)>, String> {
        let n = self.period.len();
        let expand = |vals: &[f64], default: f64, flag: &str| -> Result<Vec<f64>, String> {
            match vals.len() {
                0 => Ok(vec![default; n]),
                len if len == n => Ok(vals.to_vec()),
                len => Err(format!("--{flag} given {len} times but --period {n} times")),
            }
        };
        let amp = expand(&self.amp, 1.0, "amp")?;
        let phase = expand(&self.phase, 0.0, "phase")?;
        Ok((0..n).map(|i| (self.period[i], amp[i], phase[i])).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn analyze_defaults() {
        let cli = Cli::try_parse_from(["seasonwave", "analyze", "--input", "x.csv"]).unwrap();
        let Command::Analyze(a) = cli.command else { panic!() };
        let o = a.opts;
        assert_eq!((o.dt, o.levels, o.omega0, o.dj), (1.0, 5, 6.0, 0.125));
        assert_eq!((o.wavelet, o.cwt_wavelet), (DwtChoice::Both, CwtChoice::Morlet));
        assert_eq!(o.out, PathBuf::from("."));
        assert!(!o.plots && o.seed.is_none());
    }

    #[test]
    fn compare_defaults() {
        let cli = Cli::try_parse_from(["seasonwave", "compare", "--input", "a", "--input2", "b"]).unwrap();
        let Command::Compare(c) = cli.command else { panic!() };
        assert_eq!((c.min_r2, c.stride, c.coherence_wavelet), (0.5, 4, CwtChoice::Cgau2));
    }

    #[test]
    fn synth_components_line_up() {
        let parse = |extra: &[&str]| {
            let mut argv = vec!["seasonwave", "synth", "--n", "60"];
            argv.extend_from_slice(extra);
            let Command::Synth(s) = Cli::try_parse_from(argv).unwrap().command else { panic!() };
            s.components()
        };
        assert_eq!(parse(&["--period", "20"]).unwrap(), vec![(20.0, 1.0, 0.0)]);
        assert_eq!(
            parse(&["--period", "20", "--amp", "2", "--period", "15", "--amp", "0.5", "--phase", "0", "--phase", "1"]).unwrap(),
            vec![(20.0, 2.0, 0.0), (15.0, 0.5, 1.0)]
        );
        assert!(parse(&["--period", "20", "--period", "15", "--amp", "1"]).is_err());
        assert!(parse(&[]).unwrap().is_empty());
    }

    #[test]
    fn missing_input_is_usage_error() {
        let err = Cli::try_parse_from(["seasonwave", "analyze"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}

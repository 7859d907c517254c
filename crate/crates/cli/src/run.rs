use std::fmt;
use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use seasonwave::dwt::Extension;
use seasonwave::series::{load_csv, write_csv};
use seasonwave::synth::SynthSpec;
use seasonwave::TimeSeries;

use crate::analysis::{analyze_pair, analyze_series, AnalysisConfig, SeriesAnalysis};
use crate::args::{AnalysisOpts, AnalyzeArgs, Cli, Command, CompareArgs, SynthArgs};
use crate::report::{self, Report, Tool};
use crate::{json, plots};

/// Failures surfaced by the binary.
#[derive(Debug)]
pub enum CliError {
    /// A data or domain problem reported by the library (exit 1).
    Domain(seasonwave::Error),
    /// Reading or writing a file failed (exit 1).
    Io { path: PathBuf, source: io::Error },
    /// Flags parsed but do not fit together (exit 2).
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io { .. } => 1,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.code(),
            CliError::Io { .. } => "Io",
            CliError::Usage(_) => "Usage",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "error [{}]: {e}", self.code()),
            CliError::Io { path, source } => write!(f, "error [Io]: {}: {source}", path.display()),
            CliError::Usage(msg) => write!(f, "error [Usage]: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<seasonwave::Error> for CliError {
    fn from(e: seasonwave::Error) -> Self {
        CliError::Domain(e)
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Compare(args) => cmd_compare(&args),
        Command::Synth(args) => cmd_synth(&args),
    }
}

fn config_of(opts: &AnalysisOpts) -> AnalysisConfig {
    AnalysisConfig {
        levels: opts.levels,
        filters: opts.wavelet.filters(),
        extension: Extension::Symmetric,
        cwt_wavelet: opts.cwt_wavelet.kind(opts.omega0),
        dj: opts.dj,
        s0_factor: 2.0,
    }
}

fn load(path: &Path, dt: f64) -> Result<TimeSeries, CliError> {
    let file = File::open(path).map_err(io_err(path))?;
    let label = path.file_stem().map_or_else(|| "series".into(), |s| s.to_string_lossy().into_owned());
    Ok(load_csv(BufReader::new(file), dt, &label)?)
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(io_err(&path))
}

fn now_unix_s() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

fn write_plots(dir: &Path, series: &[&SeriesAnalysis]) -> Result<(), CliError> {
    write_file(dir, "scatter.svg", &plots::scatter(series))?;
    write_file(dir, "periodogram.svg", &plots::periodogram(series))?;
    write_file(dir, "dwt_levels.svg", &plots::dwt_levels(series)?)?;
    write_file(dir, "scalogram.svg", &plots::scalogram(series))
}

fn finish_report(dir: &Path, report: &Report) -> Result<(), CliError> {
    let text = json::to_string(report).expect("report serializes");
    write_file(dir, "report.json", &text)
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let opts = &args.opts;
    let cfg = config_of(opts);
    let series = load(&args.input, opts.dt)?;
    let analysis = analyze_series(series, &cfg)?;

    fs::create_dir_all(&opts.out).map_err(io_err(&opts.out))?;
    let report = Report {
        schema_version: report::SCHEMA_VERSION,
        tool: Tool::current(),
        generated_at_unix_s: now_unix_s(),
        config: report::config_echo("analyze", vec![args.input.display().to_string()], opts.dt, opts.omega0, opts.seed, &cfg),
        series: vec![report::series_block(&analysis)],
        coherence: None,
    };
    if opts.plots {
        write_plots(&opts.out, &[&analysis])?;
    }
    finish_report(&opts.out, &report)
}

pub fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    let opts = &args.opts;
    let cfg = config_of(opts);
    let x = load(&args.input, opts.dt)?;
    let y = load(&args.input2, opts.dt)?;
    if x.len() != y.len() {
        return Err(seasonwave::Error::LengthMismatch { left: x.len(), right: y.len() }.into());
    }
    let kind = args.coherence_wavelet.kind(opts.omega0);
    let pair = analyze_pair(&x, &y, kind, &cfg, args.min_r2, args.stride)?;
    let labels = (x.label().to_string(), y.label().to_string());
    let a = analyze_series(x, &cfg)?;
    let b = analyze_series(y, &cfg)?;

    fs::create_dir_all(&opts.out).map_err(io_err(&opts.out))?;
    let mut config = report::config_echo(
        "compare",
        vec![args.input.display().to_string(), args.input2.display().to_string()],
        opts.dt,
        opts.omega0,
        opts.seed,
        &cfg,
    );
    config.coherence_wavelet = Some(kind.name());
    config.min_r2 = Some(args.min_r2);
    config.stride = Some(args.stride);
    let report = Report {
        schema_version: report::SCHEMA_VERSION,
        tool: Tool::current(),
        generated_at_unix_s: now_unix_s(),
        config,
        series: vec![report::series_block(&a), report::series_block(&b)],
        coherence: Some(report::coherence_block(&pair)),
    };
    if opts.plots {
        write_plots(&opts.out, &[&a, &b])?;
        write_file(&opts.out, "coherence.svg", &plots::coherence(&pair, (&labels.0, &labels.1), opts.dt))?;
    }
    finish_report(&opts.out, &report)
}

pub fn cmd_synth(args: &SynthArgs) -> Result<(), CliError> {
    let components = args.components().map_err(CliError::Usage)?;
    let spec = components
        .into_iter()
        .fold(SynthSpec::new(args.n, args.dt), |spec, (p, a, ph)| spec.component(p, a, ph))
        .offset(args.offset)
        .noise(args.noise, args.seed);
    let series = spec.generate()?;
    let mut buf = Vec::new();
    write_csv(&series, &mut buf).expect("writing to memory");
    match &args.out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(io_err(dir))?;
            }
            fs::write(path, &buf).map_err(io_err(path))
        }
        None => io::stdout().write_all(&buf).map_err(io_err(Path::new("<stdout>"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn messages_carry_the_code() {
        let e = CliError::from(seasonwave::Error::NoDominantPeak);
        assert_eq!(e.exit_code(), 1);
        assert!(e.to_string().starts_with("error [NoDominantPeak]: "));
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        let io = CliError::Io { path: "a.csv".into(), source: io::Error::from(io::ErrorKind::NotFound) };
        assert_eq!((io.exit_code(), io.code()), (1, "Io"));
    }
}

//! Command-line front end for `seasonwave`.
//!
//! `seasonwave analyze` and `seasonwave compare` run the full pipeline on one
//! or two CSV series and write `report.json`, plus SVG figures with `--plots`.
//! `seasonwave synth` writes seeded test series.
//!
//! Exit codes: 0 on success, 1 for data errors (the message names the error,
//! e.g. `error [NoDominantPeak]: ...`), 2 for usage errors.

pub mod analysis;
pub mod args;
pub mod json;
pub mod plots;
pub mod report;
pub mod run;
pub mod svg;

pub use args::Cli;
pub use run::{run, CliError};

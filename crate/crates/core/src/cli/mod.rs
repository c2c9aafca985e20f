//! Command-line front end: `region`, `compare`, `example` and `simulate`.
//!
//! Exit codes: 0 on success, 1 on validation errors, 2 when a budget is
//! exceeded.

mod commands;
mod manifest;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::gallery::GalleryError;
use crate::probkit::ProbError;
use crate::regions::RegionError;
use crate::simlab::SimError;

pub use manifest::{sha256_hex, InputDigest, RunManifest};

/// Overrides the search cell budget.
pub const BUDGET_ENV: &str = "SDWTC_CELL_BUDGET";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Budget(_) => 2,
        }
    }

    fn at(path: &std::path::Path, e: impl Into<CliError>) -> CliError {
        match e.into() {
            CliError::Validation(m) => CliError::Validation(format!("{}: {m}", path.display())),
            CliError::Budget(m) => CliError::Budget(format!("{}: {m}", path.display())),
        }
    }
}

impl From<ProbError> for CliError {
    fn from(e: ProbError) -> Self {
        match e {
            ProbError::CellBudget { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<RegionError> for CliError {
    fn from(e: RegionError) -> Self {
        match e {
            RegionError::Budget { .. } => CliError::Budget(e.to_string()),
            RegionError::Prob(p) => p.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<GalleryError> for CliError {
    fn from(e: GalleryError) -> Self {
        match e {
            GalleryError::Prob(p) => p.into(),
            GalleryError::Region(r) => r.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Budget { .. } => CliError::Budget(e.to_string()),
            SimError::Prob(p) => p.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "sdwtc", version, about = "Secret message and key rates for state-dependent wiretap channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Output document path; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 4)]
    pub card_u: usize,
    #[arg(long, default_value_t = 6)]
    pub card_v: usize,
    #[arg(long, default_value_t = 200)]
    pub restarts: usize,
    #[arg(long, default_value_t = 4000)]
    pub steps: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Region of one scheme at a given auxiliary, or at the best one found.
    Region {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long, conflicts_with = "search")]
        aux: Option<PathBuf>,
        /// Search for an auxiliary instead of reading one.
        #[arg(long)]
        search: bool,
        #[arg(long, default_value = "A")]
        scheme: String,
        /// Selection weight on the message-rate intercept.
        #[arg(long, default_value_t = 0.0)]
        weight: f64,
        #[command(flatten)]
        budget: SearchArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Best intercepts found by each scheme on one channel.
    Compare {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "A,PER,GCP,BASSI_JOINT,BASSI_SEP")]
        schemes: Vec<String>,
        #[command(flatten)]
        budget: SearchArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Writes an example channel and auxiliary and prints its analytics.
    Example {
        /// `msaf` or `coin`.
        name: String,
        #[arg(long, default_value_t = 0.25)]
        sigma: f64,
        /// Directory receiving `<name>_channel.json` and `<name>_aux.json`.
        #[arg(long, default_value = ".")]
        dir: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Monte Carlo run of the superposition code; list-valued flags sweep a grid.
    Simulate {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        aux: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "4")]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        rate_m: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        rate_k: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        rate_1: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        rate_2: Vec<f64>,
        #[arg(long, default_value_t = crate::simlab::DEFAULT_EPS_TYP)]
        eps_typ: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Also enumerate exact leakage and key uniformity.
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match commands::dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

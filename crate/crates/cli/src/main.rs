//! `multicurve` batch runner.
//!
//! Exit status: 0 ok, 1 per-row errors (outputs still written), 2 bad
//! config or usage, 3 missing input file, 4 malformed input, 5 calibration
//! failure.

mod commands;
mod config;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use multicurve::Error;

use config::{Command, Overrides, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "multicurve", version, about = "Multi-curve EUR rates batch runs")]
struct Cli {
    /// TOML run config; relative paths inside it resolve against its directory.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    command: Option<Command>,
    /// As-of date, YYYY-MM-DD.
    #[arg(long)]
    asof: Option<String>,
    /// Quote file; repeat for several. Replaces the config's list.
    #[arg(long)]
    quotes: Vec<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum Failure {
    RowErrors(usize),
    Config(String),
    MissingFile(String),
    Schema(String),
    Calibration(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::RowErrors(_) => 1,
            Failure::Config(_) => 2,
            Failure::MissingFile(_) => 3,
            Failure::Schema(_) => 4,
            Failure::Calibration(_) => 5,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::RowErrors(n) => write!(f, "{n} row(s) failed"),
            Failure::Config(m) => write!(f, "configuration: {m}"),
            Failure::MissingFile(m) => write!(f, "missing file: {m}"),
            Failure::Schema(m) => write!(f, "bad input: {m}"),
            Failure::Calibration(m) => write!(f, "calibration: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse { .. } | Error::Duplicate(_) | Error::InvalidDate(_) | Error::InvalidTenor(_) => {
                Failure::Schema(msg)
            }
            Error::MissingQuote(_) | Error::Calibration { .. } | Error::Coverage(_) | Error::Insufficient(_) => {
                Failure::Calibration(msg)
            }
            Error::Io(_) => Failure::MissingFile(msg),
            _ => Failure::Config(msg),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Config(format!("writing output: {e}"))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let flags = Overrides { command: cli.command, asof: cli.asof, quotes: cli.quotes, out: cli.out };
    let cfg = RunConfig::load(cli.config.as_deref(), flags)?;
    for f in cfg.inputs()? {
        if !f.is_file() {
            return Err(Failure::MissingFile(f.display().to_string()));
        }
    }
    commands::run(&cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

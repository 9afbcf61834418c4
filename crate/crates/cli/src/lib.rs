//! Command-line front end: argument parsing, run configurations and JSON/CSV reports.

mod commands;
pub mod config;
pub mod range;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use ffcount::Error;

use crate::config::{Cli, RunConfig};
use crate::report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_CONSISTENCY: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Consistency(_) => EXIT_CONSISTENCY,
            CliError::Core(e) => match e {
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                Error::Consistency(_) | Error::NoConvergence { .. } => EXIT_CONSISTENCY,
                _ => EXIT_USAGE,
            },
        }
    }
}

/// Parses `argv` (program name first) into a run configuration, or `None` when
/// clap already handled the request (help, version).
pub fn parse_config<I, T>(argv: I) -> Result<Option<(RunConfig, bool)>, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return Ok(None);
        }
        Err(e) => return Err(CliError::Usage(e.render().to_string())),
    };
    let config = match (&cli.global.config, cli.command) {
        (Some(path), None) => RunConfig::from_json(&std::fs::read_to_string(path)?)?,
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "--config replaces the subcommand; give one or the other".into(),
            ))
        }
        (None, Some(command)) => RunConfig::from_args(&cli.global, command)?,
        (None, None) => return Err(CliError::Usage("missing subcommand; see --help".into())),
    };
    Ok(Some((config, cli.global.emit_config)))
}

pub fn execute(config: &RunConfig) -> Result<Report, CliError> {
    commands::execute(config)
}

/// Writes through a sibling temporary file so readers never see a partial report.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn emit(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match &config.out {
        Some(path) => write_atomic(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn run_inner<I, T>(argv: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let Some((config, emit_config)) = parse_config(argv)? else {
        return Ok(());
    };
    if emit_config {
        return emit(&config, &config.to_json());
    }
    let report = execute(&config)?;
    emit(&config, &report.render(&config))?;
    match report.failure {
        Some(why) => Err(CliError::Consistency(why)),
        None => Ok(()),
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match run_inner(argv) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let text = e.to_string();
            eprintln!("ffcount: {}", text.trim_end());
            e.exit_code()
        }
    }
}

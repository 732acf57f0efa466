//! Command line front end: single evaluations, sweeps, figure data, the
//! constants table and the acceptance suite.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::ffi::OsString;
use std::fmt;
use std::io;

use clap::Parser;

pub mod args;
pub mod config;
pub mod output;

mod constants_cmd;
mod evaluate;
mod figures;
mod verify;

use args::{Cli, Command};
use config::RunConfig;

pub use evaluate::parse_range;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or settings; nothing was computed.
    Usage(String),
    Compute(rydberg_renyi::Error),
    Io(io::Error),
}

impl CliError {
    /// 2 for invalid input, 3 for numerical failures, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Compute(rydberg_renyi::Error::Domain(_)) => 2,
            CliError::Compute(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "error: {msg}"),
            CliError::Compute(e) => write!(f, "{}: {e}", e.name()),
            CliError::Io(e) => write!(f, "error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<rydberg_renyi::Error> for CliError {
    fn from(e: rydberg_renyi::Error) -> Self {
        CliError::Compute(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    let cfg = RunConfig::from_env(&cli.global)?;
    match cli.command {
        Command::Entropy(a) => evaluate::entropy(&a, &cfg).map(|_| 0),
        Command::Sweep(a) => evaluate::sweep(&a, &cfg).map(|_| 0),
        Command::Figures(a) => figures::run(&a, &cfg).map(|_| 0),
        Command::Verify(a) => verify::run(&a, &cfg),
        Command::Constants(a) => constants_cmd::run(&a, &cfg),
    }
}

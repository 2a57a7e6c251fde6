//! Command-line front end: table reproduction, ad-hoc queries, caching and
//! machine-readable output.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use std::fmt::Display;
use std::io::Write;

use args::{Cli, Command};
use commands::Io;
use config::RunConfig;

pub const EXIT_SUCCESS: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_NONCONVERGENCE: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Display) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.to_string(),
        }
    }

    pub fn mismatch(message: impl Display) -> Self {
        Self {
            code: EXIT_MISMATCH,
            message: message.to_string(),
        }
    }
}

impl From<redheffer::Error> for CliError {
    fn from(e: redheffer::Error) -> Self {
        use redheffer::Error as E;
        let code = match e {
            E::NonConvergence { .. } => EXIT_NONCONVERGENCE,
            E::Structure(_) => EXIT_MISMATCH,
            _ => EXIT_INVALID,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::invalid(e)
    }
}

/// Runs one parsed command; returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = dispatch(cli, &mut Io { out, err });
    let _ = out.flush();
    match result {
        Ok(()) => EXIT_SUCCESS,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cli: &Cli, io: &mut Io) -> Result<(), CliError> {
    match &cli.command {
        Command::Vnk(args) => commands::vnk(&RunConfig::from_args("vnk", args)?, io),
        Command::Spectra(args) => commands::spectra(&RunConfig::from_args("spectra", args)?, io),
        Command::Det(args) => commands::det(&RunConfig::from_args("det", args)?, io),
        Command::Reproduce { table, common } => {
            commands::reproduce(*table, &RunConfig::from_args("reproduce", common)?, io)
        }
    }
}

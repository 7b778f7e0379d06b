//! `heis`: command-line front end for the Heisenberg group-ring toolkit.
//!
//! Exit codes: 0 success (whatever the verdict), 1 usage, 2 unreadable or
//! malformed input, 3 invalid parameters, 4 numerical failure.

mod args;
mod commands;
mod manifest;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Invalid(String),
    Compute(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Invalid(_) => 3,
            CliError::Compute(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Invalid(m) | CliError::Compute(m) => m,
        }
    }
}

impl From<heis_core::Error> for CliError {
    fn from(e: heis_core::Error) -> Self {
        use heis_core::Error as E;
        match e {
            E::ZeroDenominator
            | E::NotReduced { .. }
            | E::ThetaMismatch(..)
            | E::WindowTooSmall { .. }
            | E::NotUnimodular(_)
            | E::InvalidConfig(_)
            | E::Overflow(_) => CliError::Invalid(e.to_string()),
            E::Json(_) => CliError::Input(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

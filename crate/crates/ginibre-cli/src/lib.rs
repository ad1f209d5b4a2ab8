//! Command-line front end: argument parsing, dispatch and output.

mod args;
mod commands;
mod output;
mod verify;

use std::ffi::OsString;

use clap::Parser;

pub use args::Cli;
pub use verify::{run_suite, Suite, SuiteReport};

/// Exit code for invalid parameters.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit code for numerical or I/O failures and failed verification.
pub const EXIT_FAILURE: i32 = 1;

/// Error raised by a subcommand, split by exit code.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Failure(String),
}

impl From<ginibre::Error> for CliError {
    fn from(e: ginibre::Error) -> Self {
        match e {
            ginibre::Error::OutOfRange { name, value, range } => {
                CliError::Validation(format!("invalid --{}: {value} (accepted: {range})", name.replace('_', "-")))
            }
            ginibre::Error::InvalidN { n, reason } => CliError::Validation(format!("invalid --n: {n} ({reason})")),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(format!("io: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Failure(format!("json: {e}"))
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(t) = cli.threads {
        // a second initialization in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match commands::dispatch(&cli) {
        Ok(code) => code,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            EXIT_VALIDATION
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            EXIT_FAILURE
        }
    }
}

//! Command-line front end for `ssy-closure`.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, or certificate `Proven` |
//! | 1 | usage or domain error |
//! | 2 | certificate not proven, or a tolerance breach |
//! | 3 | I/O error |

pub mod args;
mod commands;
pub mod report;

use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    /// A check ran and failed; the report has already been written.
    Failed(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Domain(_) => 1,
            CliError::Failed(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Failed(m) | CliError::Io(m) => m,
        }
    }
}

impl From<ssy_closure::Error> for CliError {
    fn from(e: ssy_closure::Error) -> Self {
        match e {
            ssy_closure::Error::Precondition(m) => CliError::Usage(m),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Runs the command line `argv` (program name first), writing results to
/// `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let result = match cli.command {
        Command::Eval(a) => commands::eval(a, out, false),
        Command::Cmc(a) => commands::eval(a, out, true),
        Command::Sweep(a) => commands::sweep(a, out),
        Command::Compare(a) => commands::compare(a, out),
        Command::Certify(a) => commands::certify(a, out),
        Command::Optimize(a) => commands::optimize(a, out),
        Command::Bernstein(a) => commands::bernstein(a, out),
        Command::OracleCheck(a) => commands::oracle_check(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

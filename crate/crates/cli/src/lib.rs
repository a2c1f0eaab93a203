//! The `line` command-line tool.
//!
//! Exit codes: 0 success, 1 self-test or assertion failure, 2 usage error or
//! attack cap exceeded, 3 malformed input, 4 integrity reject.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::Parser;
use thiserror::Error;

mod args;
mod attack;
pub mod bench;
mod files;
mod selftest;

pub use args::{Cli, Command, ParamArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_MALFORMED: u8 = 3;
pub const EXIT_REJECT: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("REJECT")]
    Reject,
    #[error("{0}")]
    Failed(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => EXIT_FAILED,
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Malformed(_) => EXIT_MALFORMED,
            CliError::Reject => EXIT_REJECT,
        }
    }
}

impl From<line_core::Error> for CliError {
    fn from(e: line_core::Error) -> Self {
        use line_core::Error as E;
        match e {
            E::Reject => CliError::Reject,
            E::CapExceeded { .. } | E::InvalidParams(_) | E::Unsupported(_) => {
                CliError::Usage(format!("refused: {e}"))
            }
            E::NotSeedDerived => CliError::Failed(e.to_string()),
            other => CliError::Malformed(other.to_string()),
        }
    }
}

pub(crate) fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn stdout_err(source: io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return e.exit_code() as u8;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    let text = match command {
        Command::Keygen(a) => files::keygen(&a)?,
        Command::Encrypt(a) => files::encrypt(&a)?,
        Command::Decrypt(a) => files::decrypt(&a)?,
        Command::Selftest(a) => {
            let (text, passed) = selftest::run(&a)?;
            out.write_all(text.as_bytes()).map_err(stdout_err)?;
            return if passed {
                Ok(())
            } else {
                Err(CliError::Failed("SELFTEST FAIL".into()))
            };
        }
        Command::Bench(a) => {
            let (text, verdict) = bench::command(&a)?;
            out.write_all(text.as_bytes()).map_err(stdout_err)?;
            return verdict;
        }
        Command::Attack(a) => attack::run(&a)?,
        Command::Params(a) => bench::params_command(&a)?,
    };
    out.write_all(text.as_bytes()).map_err(stdout_err)
}

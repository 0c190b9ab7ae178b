use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Failures of a subcommand, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unparseable input (exit 1).
    Usage(String),
    /// The simulation or analysis itself failed (exit 2).
    Runtime(String),
    /// Reading or writing a file failed (exit 3).
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => 1,
            CliError::Runtime(_) => 2,
            CliError::Io { .. } => 3,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Runtime(m) => write!(f, "{m}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl From<twirl_core::Error> for CliError {
    fn from(e: twirl_core::Error) -> Self {
        use twirl_core::Error::*;
        match e {
            Usage(_) | Parse(_) | Config { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

//! Harness-level errors with CLI exit semantics.

use maxlab_core::CoreError;
use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad config or arguments; exit code 2, nothing written.
    Usage(String),
    /// Runtime failure (solver abort, I/O); exit code 1.
    Runtime(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Runtime(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Config(m) => CliError::Usage(m),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("i/o: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

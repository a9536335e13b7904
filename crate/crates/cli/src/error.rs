use std::fmt;

use nearfield_core::Error;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    VerifyFailed = 1,
    Validation = 2,
    NonConvergence = 3,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Validation(String),
    NonConvergence(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::NonConvergence(_) => ExitCode::NonConvergence,
            // unwritable output is reported like a bad --out argument
            CliError::Validation(_) | CliError::Io(_) => ExitCode::Validation,
        }
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid request: {m}"),
            CliError::NonConvergence(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence(_) | Error::Overflow(_) => CliError::NonConvergence(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

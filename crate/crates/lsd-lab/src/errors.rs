//! CLI error classes mapped to exit codes: validation failures (bad config,
//! malformed input files) exit with 1, numerical-failure diagnostics from the
//! computation itself exit with 2.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(msg) => write!(f, "validation error: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = Result<T, CliError>;

pub fn validation(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

/// Core errors raised while constructing inputs from the config are
/// validation errors.
pub fn invalid(err: lsd_core::Error) -> CliError {
    CliError::Validation(err.to_string())
}

/// Core errors raised during the computation are numerical diagnostics.
pub fn numerical(err: lsd_core::Error) -> CliError {
    CliError::Numerical(err.to_string())
}

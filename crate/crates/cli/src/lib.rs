//! File formats and commands for the `tourmin` binary.
//!
//! Exit codes: 0 ok, 1 verification failed, 2 input error, 3 budget exceeded.

pub mod commands;
pub mod formats;
pub mod meta;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input.
    #[error("{0}")]
    Input(String),
    /// The input is well formed but a check on it failed.
    #[error("{0}")]
    Verification(String),
    #[error("budget-exceeded")]
    BudgetExceeded,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
            CliError::BudgetExceeded => 3,
        }
    }
}

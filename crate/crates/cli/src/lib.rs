//! Experiment orchestration behind the `hankel-fh` command.

pub mod commands;
pub mod config;
pub mod output;
pub mod problem;

use std::fmt;

/// Exit code 2: invalid input or violated hypothesis.
pub const EXIT_INVALID: i32 = 2;
/// Exit code 3: a numerical result did not converge.
pub const EXIT_UNCONVERGED: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    pub fn unconverged(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_UNCONVERGED,
            message: message.into(),
        }
    }

    /// Library error with the configuration key it arose from.
    pub fn from_lib(context: &str, e: hankel_fh::Error) -> Self {
        let message = if context.is_empty() {
            e.to_string()
        } else {
            format!("{context}: {e}")
        };
        match e {
            hankel_fh::Error::Convergence(_) => CliError::unconverged(message),
            _ => CliError::invalid(message),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

//! Errors of the command-line driver and their exit codes.

use std::io;
use std::path::PathBuf;

use lipcert_core::Error as CoreError;

/// Exit code for a run whose checks all passed.
pub const EXIT_OK: u8 = 0;
/// Exit code for a mathematical violation: a failed certificate, a
/// non-metric input, a constant that is too small.
pub const EXIT_VIOLATION: u8 = 1;
/// Exit code for usage, parse and IO errors.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error("{path}: line {line}, column {column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("invalid parameters: {0}")]
    BadParameters(String),

    #[error("CSV output: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{0}")]
    Violation(String),
}

impl CliError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        CliError::Format {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Violation(_) => EXIT_VIOLATION,
            CliError::Core(e) if is_violation(e) => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        }
    }
}

/// Core errors that report a property of the data rather than malformed
/// input.
fn is_violation(e: &CoreError) -> bool {
    matches!(
        e,
        CoreError::NegativeDistance { .. }
            | CoreError::NonzeroDiagonal { .. }
            | CoreError::AsymmetricMatrix { .. }
            | CoreError::TriangleViolation { .. }
            | CoreError::DuplicatePoint { .. }
            | CoreError::DisconnectedGraph { .. }
            | CoreError::SeedsTooClose { .. }
            | CoreError::CTooSmall { .. }
            | CoreError::StarViolated { .. }
    )
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

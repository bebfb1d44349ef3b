use std::path::PathBuf;

use thiserror::Error;

/// Failures of a CLI command, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {message}")]
    ConfigSyntax { path: PathBuf, line: usize, column: usize, message: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown sweep parameter `{0}`")]
    UnknownParameter(String),

    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("cannot write CSV: {0}")]
    Csv(#[from] csv::Error),

    #[error("cannot serialize report: {0}")]
    Json(#[source] serde_json::Error),

    #[error("numerical failure: {0}")]
    Numeric(#[from] spincs_core::Error),
}

impl CliError {
    pub const EXIT_TOLERANCE: i32 = 1;
    pub const EXIT_INPUT: i32 = 2;
    pub const EXIT_NUMERIC: i32 = 3;

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Numeric(_) => Self::EXIT_NUMERIC,
            _ => Self::EXIT_INPUT,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

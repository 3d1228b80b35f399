use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("{0}")]
    Core(#[from] vortex_core::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
    #[error("cannot write output: {0}")]
    Csv(#[from] csv::Error),
    #[error("cannot write output: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invariant failure: {}", .0.join(", "))]
    Invariant(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use vortex_core::Error as E;
        match self {
            CliError::Invariant(_) => 1,
            CliError::BadInput(_) => 2,
            CliError::Core(e) => match e {
                E::SeriesNotConverged { .. }
                | E::QuadratureNotConverged { .. }
                | E::NonPositiveIntegral(_)
                | E::SeriesRange { .. }
                | E::ModeMismatch => 1,
                _ => 2,
            },
            CliError::Read { .. } | CliError::Write(_) | CliError::Csv(_) | CliError::Json(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn bad(msg: impl Into<String>) -> CliError {
    CliError::BadInput(msg.into())
}

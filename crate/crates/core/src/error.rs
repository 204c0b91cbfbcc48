use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KgError {
    #[error("unsupported spatial dimension {0} (only d = 1 is implemented)")]
    UnsupportedDimension(usize),

    #[error("invalid grid size: K = {0}, need K >= 2")]
    InvalidSize(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid index {value} for {what}")]
    InvalidIndex { what: &'static str, value: i64 },

    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("insufficient data: need at least {needed} points, got {found}")]
    InsufficientData { needed: usize, found: usize },

    #[error("reference solution unreliable: self-convergence {certificate:e} exceeds {tolerance:e}")]
    ReferenceUnreliable { certificate: f64, tolerance: f64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, KgError>;

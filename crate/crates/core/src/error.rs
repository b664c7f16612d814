use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate vector: token {index} has zero norm")]
    DegenerateVector { index: usize },

    #[error("non-finite value at element {index}")]
    NonFinite { index: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("length mismatch: expected {expected} values, got {actual}")]
    Pairing { expected: usize, actual: usize },

    #[error("budget error: cannot select k={k} tokens out of {n}")]
    Budget { k: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("undefined ratio: importance scores sum to zero")]
    UndefinedRatio,

    #[error("degenerate geometry: reference and selection distances are all zero")]
    DegenerateGeometry,

    #[error("kernel conditioning error: residual variance {residual:e} for token {index} is below -{jitter:e}")]
    KernelConditioning {
        index: usize,
        residual: f64,
        jitter: f64,
    },

    #[error("format error at byte {offset}: {message}")]
    Format { offset: u64, message: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn file(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::File {
            path: path.into(),
            source,
        }
    }
}

use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the solver library and the experiment runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    Domain(String),

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("derivative order {order} is not supported (max {max})")]
    UnsupportedOrder { order: usize, max: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix is singular to working precision at pivot {pivot}")]
    Singular { pivot: usize },

    #[error("linear solve failed at step {step}: matrix singular at pivot {pivot}")]
    SolverFailure { step: usize, pivot: usize },

    #[error("non-finite value produced at step {step}")]
    NonFinite { step: usize },

    #[error("zero denominator in amplification factor")]
    ZeroDenominator,

    #[error("observer time {time} is not a whole multiple of dt = {dt} within [0, {t_final}]")]
    MisalignedObserver { time: f64, dt: f64, t_final: f64 },

    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

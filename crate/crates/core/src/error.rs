use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("matrix is not Hermitian: |m - m^dagger|_F = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("eigenvalue {value:e} is below the negative tolerance")]
    NegativeEigenvalue { value: f64 },

    #[error("trace {trace} deviates from 1")]
    TraceNotUnit { trace: f64 },

    #[error("{what} = {value} is out of range")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("channel is not unital; the time-flip needs a bidirectional channel")]
    NonUnital,

    #[error("memory marginal is not maximally mixed (deviation {deviation:e})")]
    MarginalNotMaximallyMixed { deviation: f64 },

    #[error("oracle mismatch at p = {p}, alpha = {alpha:?}: {detail}")]
    OracleMismatch {
        p: f64,
        alpha: [f64; 3],
        detail: String,
    },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Errors that signal a broken physical invariant or a disagreement
    /// between the two evaluation paths, as opposed to bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::OracleMismatch { .. } | Error::InvariantViolation(_)
        )
    }
}

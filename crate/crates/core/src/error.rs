use thiserror::Error;

/// Errors raised by the discrimination library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Matrix is not Hermitian within tolerance.
    #[error("matrix is not Hermitian: |m[{row}][{col}] - conj(m[{col}][{row}])| = {deviation:e}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0}: only 2 and 4 are supported")]
    UnsupportedDimension(usize),

    /// State vector is not normalized within tolerance.
    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),

    /// Measurement angle outside `[0, pi/2]`.
    #[error("angle {0} rad is outside [0, pi/2]")]
    AngleOutOfRange(f64),

    #[error("outcome has probability {0:e}; the conditional state is undefined")]
    ZeroProbability(f64),

    #[error("visibility {0} is outside [0, 1]")]
    InvalidVisibility(f64),

    #[error("guess function index {0} is outside 0..=15")]
    InvalidGuessIndex(u8),

    #[error("outcome bit {0} is not 0 or 1")]
    InvalidOutcome(u8),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("I/O error on {path}: {message}")]
    Io { path: String, message: String },

    /// Malformed CSV or JSON input, or a serialization failure.
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

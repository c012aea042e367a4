use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("eigensolver did not converge within {iterations} sweeps")]
    NoConvergence { iterations: usize },

    #[error("matrix side {side} exceeds the size cap {cap}")]
    SizeOverflow { side: usize, cap: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("amplitude vector has norm {norm}, expected 1")]
    NotNormalized { norm: f64 },

    #[error("length {len} is not a perfect cube of a local dimension >= 2")]
    BadLength { len: usize },

    #[error("mixture weights sum to {sum}, expected 1")]
    WeightSum { sum: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("input of length {len} is too large for exhaustive enumeration (max {max})")]
    TooLarge { len: usize, max: usize },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("operation requires local dimension {expected}, got {got}")]
    UnsupportedDimension { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

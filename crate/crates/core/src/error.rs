use thiserror::Error;

/// Errors raised by the core routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("eigensolver or SVD failed to converge")]
    NoConvergence,

    #[error("vectors are not orthonormal (deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },

    #[error("matrix is not an orthogonal projection (deviation {deviation:e})")]
    NotAProjection { deviation: f64 },

    #[error("projections {first} and {second} are not mutually orthogonal (overlap {overlap:e})")]
    NotMutuallyOrthogonal {
        first: usize,
        second: usize,
        overlap: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("p must satisfy 1 < p < ∞ (got {0})")]
    InvalidExponent(String),

    #[error("invalid decay model: {0}")]
    InvalidModel(String),

    #[error("operation not supported for an empirical decay model")]
    UnsupportedModel,

    #[error("{which} has trace norm {norm}, expected 1")]
    NotNormalized { which: &'static str, norm: f64 },

    #[error("trace norm {0:e} too small to renormalize")]
    DegenerateNorm(f64),

    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

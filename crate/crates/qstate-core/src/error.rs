//! Error type shared by all state constructors and operations.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("dimension list must be non-empty with every factor >= 1")]
    InvalidDims,

    #[error("matrix side {got} does not match factor product {expected}")]
    SideMismatch { expected: usize, got: usize },

    #[error("entries must be finite")]
    NonFinite,

    #[error("matrix is not Hermitian: max |M - M^dag| = {max_dev:.3e}")]
    NotHermitian { max_dev: f64 },

    #[error("trace is not 1: got {trace}")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eig:.3e}")]
    NotPositiveSemidefinite { min_eig: f64 },

    #[error("state vector norm is not 1: got {norm}")]
    NormNotOne { norm: f64 },

    #[error("factor index {index} out of range for {count} factors")]
    FactorOutOfRange { index: usize, count: usize },

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, StateError>;

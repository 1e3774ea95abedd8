use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("{0}")]
    InvalidArgument(String),

    #[error("measure requires dims {expected} but state has {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error(transparent)]
    State(#[from] qstate_core::StateError),

    #[error(transparent)]
    Optimizer(#[from] roof_optimizer::OptError),
}

pub type Result<T> = std::result::Result<T, MeasureError>;

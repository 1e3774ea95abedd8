use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("{0}")]
    InvalidArgument(String),

    #[error("unknown canonical state {name:?}; available: {available}")]
    UnknownState { name: String, available: String },

    #[error(transparent)]
    State(#[from] qstate_core::StateError),

    #[error(transparent)]
    Measure(#[from] measures::MeasureError),

    #[error(transparent)]
    Optimizer(#[from] roof_optimizer::OptError),
}

pub type Result<T> = std::result::Result<T, LabError>;

//! Exit-status mapping.
//!
//! 2: malformed/unreadable files and schema problems.
//! 3: well-formed state files violating physical invariants.
//! 4: dimension/measure mismatches, unknown names, unsupported sound dims
//!    and bad knob values.

use qstate_core::StateError;

#[derive(Debug)]
pub enum CliError {
    Schema(String),
    Invariant(String),
    Mismatch(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Mismatch(_) => 4,
            CliError::Internal(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Schema(m)
            | CliError::Invariant(m)
            | CliError::Mismatch(m)
            | CliError::Internal(m) => m,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

impl From<StateError> for CliError {
    fn from(e: StateError) -> Self {
        match e {
            StateError::NotHermitian { .. }
            | StateError::TraceNotOne { .. }
            | StateError::NotPositiveSemidefinite { .. }
            | StateError::NormNotOne { .. }
            | StateError::NonFinite => CliError::Invariant(e.to_string()),
            StateError::InvalidDims | StateError::SideMismatch { .. } => {
                CliError::Schema(e.to_string())
            }
            StateError::InvalidEnsemble(_) => CliError::Invariant(e.to_string()),
            StateError::FactorOutOfRange { .. }
            | StateError::InvalidPovm(_)
            | StateError::InvalidArgument(_) => CliError::Mismatch(e.to_string()),
        }
    }
}

impl From<roof_optimizer::OptError> for CliError {
    fn from(e: roof_optimizer::OptError) -> Self {
        match e {
            roof_optimizer::OptError::State(s) => s.into(),
            other => CliError::Mismatch(other.to_string()),
        }
    }
}

impl From<measures::MeasureError> for CliError {
    fn from(e: measures::MeasureError) -> Self {
        match e {
            measures::MeasureError::State(s) => s.into(),
            measures::MeasureError::Optimizer(o) => o.into(),
            other => CliError::Mismatch(other.to_string()),
        }
    }
}

impl From<inequality_lab::LabError> for CliError {
    fn from(e: inequality_lab::LabError) -> Self {
        match e {
            inequality_lab::LabError::State(s) => s.into(),
            inequality_lab::LabError::Measure(m) => m.into(),
            inequality_lab::LabError::Optimizer(o) => o.into(),
            other => CliError::Mismatch(other.to_string()),
        }
    }
}

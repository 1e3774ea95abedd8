//! State-file loading with exit-status-aware error mapping.

use qstate_core::json::{DensityJson, EnsembleJson, StateJson};
use qstate_core::linalg::creal;
use qstate_core::{CVector, DensityMatrix, Ensemble, PureState};

use crate::errors::{CliError, Result};

pub enum LoadedState {
    Density(DensityMatrix),
    Pure(PureState),
}

impl LoadedState {
    pub fn into_density(self) -> DensityMatrix {
        match self {
            LoadedState::Density(d) => d,
            LoadedState::Pure(p) => p.to_density(),
        }
    }
}

pub fn load_state(path: &str) -> Result<LoadedState> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Schema(format!("cannot read {path}: {e}")))?;
    let parsed: StateJson = serde_json::from_str(&text).map_err(|e| {
        CliError::Schema(format!(
            "{path} does not match the state schema (dims + re/im grids or vectors): {e}"
        ))
    })?;
    match parsed {
        StateJson::Density(d) => Ok(LoadedState::Density(d.to_state()?)),
        StateJson::Pure(p) => Ok(LoadedState::Pure(p.to_state()?)),
    }
}

/// Pure checks accept vector files directly and density files that are
/// rank-1 within tolerance.
pub fn require_pure(state: LoadedState, context: &str) -> Result<PureState> {
    match state {
        LoadedState::Pure(p) => Ok(p),
        LoadedState::Density(rho) => {
            if !rho.is_pure(1e-9) {
                return Err(CliError::Mismatch(format!(
                    "{context} requires a pure state; the file holds a mixed state (purity {:.6})",
                    rho.purity()
                )));
            }
            // dominant eigenvector, unit norm and phase-fixed by eigh
            let (_, vecs) = rho.eigen_decomposition();
            let mut amps: CVector = vecs.column(0).into_owned();
            let n = amps.norm();
            if n > 0.0 {
                amps /= creal(n);
            }
            Ok(PureState::new_unchecked(rho.dims().clone(), amps))
        }
    }
}

pub fn load_witness(path: &str, target: &DensityMatrix) -> Result<Ensemble> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Schema(format!("cannot read {path}: {e}")))?;
    let parsed: EnsembleJson = serde_json::from_str(&text).map_err(|e| {
        CliError::Schema(format!("{path} does not match the ensemble schema: {e}"))
    })?;
    parsed
        .to_ensemble(target)
        .map_err(|e| CliError::Mismatch(format!("witness in {path} does not fit the state: {e}")))
}

pub fn density_to_json_string(rho: &DensityMatrix) -> String {
    let mut s = qstate_core::json::to_json_string(&DensityJson::from_state(rho));
    s.push('\n');
    s
}

pub fn write_text(path: &str, content: &str) -> Result<()> {
    std::fs::write(path, content)
        .map_err(|e| CliError::Internal(format!("cannot write {path}: {e}")))
}

//! Measure results: a value in bits, its bound direction, the achieving
//! witness and optimizer diagnostics.

use qstate_core::json::{EnsembleJson, PovmJson};
use qstate_core::{Ensemble, Povm};
use roof_optimizer::{BoundDirection, Diagnostics};
use serde::Serialize;

#[derive(Debug, Clone)]
pub enum Witness {
    Povm(Povm),
    Ensemble(Ensemble),
}

/// JSON form of a witness, externally tagged by its kind.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessJson {
    Povm(PovmJson),
    Ensemble(EnsembleJson),
}

#[derive(Debug, Clone)]
pub struct MeasureResult {
    /// Value in bits; never meaningfully negative.
    pub value: f64,
    pub direction: BoundDirection,
    pub witness: Option<Witness>,
    pub diagnostics: Diagnostics,
}

impl MeasureResult {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            direction: BoundDirection::Exact,
            witness: None,
            diagnostics: Diagnostics::exact(),
        }
    }

    pub fn witness_json(&self) -> Option<WitnessJson> {
        self.witness.as_ref().map(|w| match w {
            Witness::Povm(p) => WitnessJson::Povm(PovmJson::from_povm(p)),
            Witness::Ensemble(e) => WitnessJson::Ensemble(EnsembleJson::from_ensemble(e)),
        })
    }
}

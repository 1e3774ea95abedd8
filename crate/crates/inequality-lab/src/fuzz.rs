//! Seed-driven sampling campaigns over the single-state checks.

use qstate_core::random::{derive_seed, random_density, random_pure};
use qstate_core::Dims;
use rayon::prelude::*;
use roof_optimizer::OptimizerConfig;

use crate::checks::{check_duality, check_lemma1, check_main_inequality, cloning_gap};
use crate::error::{LabError, Result};
use crate::report::{InequalityRecord, InequalityReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Duality,
    Lemma1,
    Main,
    Cloning,
}

impl CheckKind {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "duality" => Ok(Self::Duality),
            "lemma1" => Ok(Self::Lemma1),
            "main" => Ok(Self::Main),
            "cloning" => Ok(Self::Cloning),
            other => Err(LabError::InvalidArgument(format!(
                "unknown check {other:?}; available: duality, lemma1, main, cloning"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Duality => "duality",
            Self::Lemma1 => "lemma1",
            Self::Main => "main",
            Self::Cloning => "cloning",
        }
    }

    const STREAM_TAG: u64 = 0x4655_5a5a; // "FUZZ"

    /// Validates dims for the check, enforcing the two-qubit anchors where
    /// the sound mode needs exact formation values.
    fn validate_dims(&self, dims: &[usize]) -> Result<()> {
        let arity_err = |need: usize| {
            Err(LabError::InvalidArgument(format!(
                "{} needs {need} factors, got {dims:?}",
                self.name()
            )))
        };
        match self {
            Self::Duality => {
                if dims.len() != 3 {
                    return arity_err(3);
                }
                if dims[0] != 2 || dims[2] != 2 {
                    return Err(LabError::InvalidArgument(format!(
                        "sound duality mode needs dims [2,dB,2] so the formation term is exact; got {dims:?}"
                    )));
                }
            }
            Self::Lemma1 => {
                if dims.len() != 4 {
                    return arity_err(4);
                }
                if dims[0] != 2 || dims[2] != 2 {
                    return Err(LabError::InvalidArgument(format!(
                        "sound four-partite mode needs dims [2,dA',2,dB'] so the formation term is exact; got {dims:?}"
                    )));
                }
            }
            Self::Main => {
                if dims.len() != 4 {
                    return arity_err(4);
                }
            }
            Self::Cloning => {
                if dims.len() != 2 {
                    return arity_err(2);
                }
            }
        }
        Ok(())
    }
}

/// Runs `samples` independent checks on seed-derived random states and
/// assembles the report. Samples are independent and evaluated in parallel;
/// records are keyed by sample index so the report does not depend on
/// scheduling.
pub fn fuzz_campaign(
    check: CheckKind,
    samples: usize,
    dims: &[usize],
    seed: u64,
    config: &OptimizerConfig,
) -> Result<InequalityReport> {
    if samples < 1 {
        return Err(LabError::InvalidArgument("samples must be >= 1".into()));
    }
    check.validate_dims(dims)?;
    let dims = Dims::new(dims.to_vec()).map_err(LabError::State)?;

    let records: Vec<Result<InequalityRecord>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let state_seed = derive_seed(seed, &[CheckKind::STREAM_TAG, i as u64]);
            let cfg = config.with_seed(derive_seed(seed, &[CheckKind::STREAM_TAG, i as u64, 1]));
            let record = match check {
                CheckKind::Duality => {
                    let phi = random_pure(&dims, state_seed);
                    check_duality(&phi, &cfg)?
                }
                CheckKind::Lemma1 => {
                    let phi = random_pure(&dims, state_seed);
                    check_lemma1(&phi, &cfg)?
                }
                CheckKind::Main => {
                    let rho = random_density(&dims, 2, state_seed).map_err(LabError::State)?;
                    check_main_inequality(&rho, &cfg, None)?
                }
                CheckKind::Cloning => {
                    let rho = random_density(&dims, 2, state_seed).map_err(LabError::State)?;
                    cloning_gap(&rho, &cfg)?
                        .to_record(format!("cloning dims={dims} rank<=2"))
                }
            };
            Ok(record.with_sample(i).with_seed(state_seed))
        })
        .collect();

    let mut collected = Vec::with_capacity(samples);
    for r in records {
        collected.push(r?);
    }
    Ok(InequalityReport::from_records(check.name(), collected))
}

//! Constructive Caratheodory reduction of weighted decompositions.
//!
//! A member state on C^d together with its objective value embeds as a point
//! in d^2 + 1 real coordinates (Hermitian coordinates plus the value). The
//! unit-trace constraint confines the points to an affine subspace of
//! dimension d^2, so any decomposition with more than d^2 + 1 members admits
//! an affine dependence. Shifting weights along a dependence until the first
//! weight hits zero removes a member while preserving both the barycenter
//! and the weighted value average; iterating reaches d^2 + 1 members.

use qstate_core::linalg::CMatrix;
use qstate_core::{DensityMatrix, Ensemble};
use nalgebra::DMatrix;

use crate::config::{OptError, Result};

/// Weights at or below this are pruned after each elimination step.
const WEIGHT_PRUNE: f64 = 1e-14;
/// Dependence coefficients below this are treated as zero.
const COEFF_EPS: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct ReducedEnsemble {
    pub ensemble: Ensemble,
    pub values: Vec<f64>,
}

/// Real embedding of a Hermitian d x d matrix: diagonal, then upper-triangle
/// real and imaginary parts.
fn embed(m: &CMatrix, out: &mut Vec<f64>) {
    let d = m.nrows();
    for i in 0..d {
        out.push(m[(i, i)].re);
    }
    for i in 0..d {
        for j in (i + 1)..d {
            out.push(m[(i, j)].re);
            out.push(m[(i, j)].im);
        }
    }
}

/// Affine dependence among the embedded (state, value) points: a nonzero c
/// with sum_i c_i x_i = 0 and sum_i c_i = 0, from the smallest right
/// singular vector of the stacked homogeneous system.
fn affine_dependence(members: &[DensityMatrix], values: &[f64], weights: &[f64]) -> Option<Vec<f64>> {
    let n = members.len();
    let d = members[0].dim();
    let rows = d * d + 2;
    let mut data = Vec::with_capacity(rows * n);
    for (m, &v) in members.iter().zip(values.iter()) {
        let mut col = Vec::with_capacity(rows);
        embed(m.matrix(), &mut col);
        col.push(v);
        col.push(1.0);
        data.extend_from_slice(&col);
    }
    // columns are the embedded points
    let mat = DMatrix::<f64>::from_vec(rows, n, data);
    let svd = mat.clone().svd(false, true);
    let v_t = svd.v_t?;
    let mut min_idx = 0usize;
    for k in 1..svd.singular_values.len() {
        if svd.singular_values[k] < svd.singular_values[min_idx] {
            min_idx = k;
        }
    }
    let mut c: Vec<f64> = (0..n).map(|i| v_t[(min_idx, i)]).collect();
    // orient so that a positive coefficient sits on a positive weight,
    // making the elimination step well defined
    let has_positive = c
        .iter()
        .zip(weights.iter())
        .any(|(&ci, &wi)| ci > COEFF_EPS && wi > 0.0);
    if !has_positive {
        for ci in c.iter_mut() {
            *ci = -*ci;
        }
    }
    if c.iter()
        .zip(weights.iter())
        .any(|(&ci, &wi)| ci > COEFF_EPS && wi > 0.0)
    {
        Some(c)
    } else {
        None
    }
}

/// Reduces an ensemble (with aligned objective values) to at most d^2 + 1
/// members while preserving the barycenter and the weighted value average.
pub fn caratheodory_reduce(ensemble: &Ensemble, values: &[f64]) -> Result<ReducedEnsemble> {
    if values.len() != ensemble.len() {
        return Err(OptError::InvalidArgument(format!(
            "{} values for {} members",
            values.len(),
            ensemble.len()
        )));
    }
    let kind = ensemble.kind();
    let target = ensemble.barycenter();
    let d = target.dim();
    let cap = d * d + 1;

    let mut weights: Vec<f64> = ensemble.weights().to_vec();
    let mut members: Vec<DensityMatrix> = ensemble.members().to_vec();
    let mut vals: Vec<f64> = values.to_vec();

    let prune = |w: &mut Vec<f64>, m: &mut Vec<DensityMatrix>, v: &mut Vec<f64>| {
        let mut i = 0;
        while i < w.len() {
            if w[i] <= WEIGHT_PRUNE {
                w.remove(i);
                m.remove(i);
                v.remove(i);
            } else {
                i += 1;
            }
        }
    };
    prune(&mut weights, &mut members, &mut vals);

    while members.len() > cap {
        let c = affine_dependence(&members, &vals, &weights).ok_or_else(|| {
            OptError::InvalidArgument("no affine dependence found during reduction".into())
        })?;
        // largest feasible shift: first weight to hit zero
        let mut t = f64::INFINITY;
        let mut arg = usize::MAX;
        for i in 0..weights.len() {
            if c[i] > COEFF_EPS {
                let ratio = weights[i] / c[i];
                if ratio < t {
                    t = ratio;
                    arg = i;
                }
            }
        }
        if arg == usize::MAX {
            return Err(OptError::InvalidArgument(
                "degenerate dependence during reduction".into(),
            ));
        }
        for i in 0..weights.len() {
            weights[i] -= t * c[i];
            if weights[i] < 0.0 {
                weights[i] = 0.0;
            }
        }
        weights[arg] = 0.0;
        prune(&mut weights, &mut members, &mut vals);
    }

    let reduced = Ensemble::new(weights, members, kind, &target).map_err(OptError::State)?;
    Ok(ReducedEnsemble {
        ensemble: reduced,
        values: vals,
    })
}

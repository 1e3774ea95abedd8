//! Inequality records with structural soundness bookkeeping.
//!
//! A record compares a left-hand side against a right-hand side, each a sum
//! of terms carrying bound directions. The record is `sound` only when every
//! lhs term is exact-or-upper and every rhs term is exact-or-lower, so that
//! slack >= -tolerance is a genuine one-sided test of the inequality. The
//! flag is computed from the directions and cannot be set by hand.

use roof_optimizer::BoundDirection;
use serde::Serialize;

/// Sound records with slack below this count as violations.
pub const VIOLATION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TermValue {
    pub value: f64,
    pub direction: BoundDirection,
}

impl TermValue {
    pub fn new(value: f64, direction: BoundDirection) -> Self {
        Self { value, direction }
    }

    pub fn exact(value: f64) -> Self {
        Self::new(value, BoundDirection::Exact)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InequalityRecord {
    pub sample: usize,
    pub descriptor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub lhs_terms: Vec<TermValue>,
    pub rhs_terms: Vec<TermValue>,
    pub lhs_bits: f64,
    pub rhs_bits: f64,
    pub slack_bits: f64,
    pub sound: bool,
}

impl InequalityRecord {
    pub fn from_terms(
        descriptor: impl Into<String>,
        lhs_terms: Vec<TermValue>,
        rhs_terms: Vec<TermValue>,
    ) -> Self {
        let lhs_bits: f64 = lhs_terms.iter().map(|t| t.value).sum();
        let rhs_bits: f64 = rhs_terms.iter().map(|t| t.value).sum();
        let sound = lhs_terms.iter().all(|t| t.direction.sound_on_lhs())
            && rhs_terms.iter().all(|t| t.direction.sound_on_rhs());
        Self {
            sample: 0,
            descriptor: descriptor.into(),
            seed: None,
            lhs_bits,
            rhs_bits,
            slack_bits: lhs_bits - rhs_bits,
            sound,
            lhs_terms,
            rhs_terms,
        }
    }

    pub fn with_sample(mut self, sample: usize) -> Self {
        self.sample = sample;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn is_violation(&self) -> bool {
        self.sound && self.slack_bits < -VIOLATION_TOL
    }
}

/// Fixed-bin slack histogram for tolerance tuning: `counts[i]` holds the
/// records with slack in `[edges[i-1], edges[i])` (open-ended at both ends).
#[derive(Debug, Clone, Serialize)]
pub struct SlackHistogram {
    pub edges_bits: Vec<f64>,
    pub counts: Vec<usize>,
}

impl SlackHistogram {
    const EDGES: [f64; 8] = [-1e-6, -1e-9, 0.0, 1e-9, 1e-6, 1e-3, 1e-2, 1e-1];

    fn of(slacks: impl Iterator<Item = f64>) -> Self {
        let mut counts = vec![0usize; Self::EDGES.len() + 1];
        for s in slacks {
            let bin = Self::EDGES.iter().position(|&e| s < e).unwrap_or(Self::EDGES.len());
            counts[bin] += 1;
        }
        Self {
            edges_bits: Self::EDGES.to_vec(),
            counts,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub check: String,
    pub samples: usize,
    pub sound_records: usize,
    /// Count of sound records with slack below -1e-6 bits.
    pub violations: usize,
    pub min_slack_bits: f64,
    pub max_slack_bits: f64,
    pub mean_slack_bits: f64,
    pub slack_histogram: SlackHistogram,
    pub records: Vec<InequalityRecord>,
}

impl InequalityReport {
    /// Assembles a report; records are sorted by sample index so the result
    /// is independent of evaluation order.
    pub fn from_records(check: impl Into<String>, mut records: Vec<InequalityRecord>) -> Self {
        records.sort_by_key(|r| r.sample);
        let samples = records.len();
        let sound_records = records.iter().filter(|r| r.sound).count();
        let violations = records.iter().filter(|r| r.is_violation()).count();
        let mut min_slack = f64::INFINITY;
        let mut max_slack = f64::NEG_INFINITY;
        let mut sum = 0.0;
        for r in &records {
            min_slack = min_slack.min(r.slack_bits);
            max_slack = max_slack.max(r.slack_bits);
            sum += r.slack_bits;
        }
        if records.is_empty() {
            min_slack = 0.0;
            max_slack = 0.0;
        }
        Self {
            check: check.into(),
            samples,
            sound_records,
            violations,
            min_slack_bits: min_slack,
            max_slack_bits: max_slack,
            mean_slack_bits: if samples > 0 { sum / samples as f64 } else { 0.0 },
            slack_histogram: SlackHistogram::of(records.iter().map(|r| r.slack_bits)),
            records,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    /// One row per sample: `sample,seed,lhs_bits,rhs_bits,slack_bits,sound`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sample,seed,lhs_bits,rhs_bits,slack_bits,sound\n");
        for r in &self.records {
            let seed = r.seed.map(|s| s.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{:.16e},{:.16e},{:.16e},{}\n",
                r.sample, seed, r.lhs_bits, r.rhs_bits, r.slack_bits, r.sound
            ));
        }
        out
    }
}

//! Tensor-factor dimension lists.

use crate::error::{Result, StateError};

/// Ordered list of local dimensions of the tensor factors of a state.
///
/// The matrix side of any state tagged with a `Dims` equals the product of
/// the factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dims {
    factors: Vec<usize>,
}

impl Dims {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(StateError::InvalidDims);
        }
        Ok(Self { factors })
    }

    /// Single factor of dimension `d`.
    pub fn single(d: usize) -> Result<Self> {
        Self::new(vec![d])
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn factor(&self, index: usize) -> Result<usize> {
        self.factors
            .get(index)
            .copied()
            .ok_or(StateError::FactorOutOfRange {
                index,
                count: self.factors.len(),
            })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of all factors, i.e. the total Hilbert-space dimension.
    pub fn total(&self) -> usize {
        self.factors.iter().product()
    }

    /// Concatenation, as produced by a tensor product.
    pub fn concat(&self, other: &Dims) -> Dims {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Dims { factors }
    }

    /// Row-major strides: `stride[f]` = product of the factors after `f`.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.factors.len()];
        for f in (0..self.factors.len().saturating_sub(1)).rev() {
            strides[f] = strides[f + 1] * self.factors[f + 1];
        }
        strides
    }

    /// Checks that `keep` is a strictly increasing list of valid factor indices.
    pub fn check_subset(&self, keep: &[usize]) -> Result<()> {
        if keep.is_empty() {
            return Err(StateError::InvalidArgument(
                "factor subset must be non-empty".into(),
            ));
        }
        for (pos, &k) in keep.iter().enumerate() {
            if k >= self.factors.len() {
                return Err(StateError::FactorOutOfRange {
                    index: k,
                    count: self.factors.len(),
                });
            }
            if pos > 0 && keep[pos - 1] >= k {
                return Err(StateError::InvalidArgument(
                    "factor subset must be strictly increasing".into(),
                ));
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for Dims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

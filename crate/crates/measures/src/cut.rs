//! Bipartitions of the tensor factors of a state.

use crate::error::{MeasureError, Result};

/// Two disjoint factor-index groups covering all factors. Groups are kept
/// sorted; the textual form is slash-separated comma lists, e.g. `0,1/2,3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Bipartition {
    pub fn new(mut left: Vec<usize>, mut right: Vec<usize>, n_factors: usize) -> Result<Self> {
        left.sort_unstable();
        right.sort_unstable();
        if left.is_empty() || right.is_empty() {
            return Err(MeasureError::InvalidArgument(
                "both sides of a bipartition must be non-empty".into(),
            ));
        }
        let mut all: Vec<usize> = left.iter().chain(right.iter()).copied().collect();
        all.sort_unstable();
        if all.len() != n_factors || all.iter().enumerate().any(|(i, &f)| i != f) {
            return Err(MeasureError::InvalidArgument(format!(
                "cut {left:?}/{right:?} does not partition factors 0..{n_factors}"
            )));
        }
        Ok(Self { left, right })
    }

    /// First factor versus the rest.
    pub fn head_vs_rest(n_factors: usize) -> Result<Self> {
        if n_factors < 2 {
            return Err(MeasureError::InvalidArgument(
                "need at least two factors for a bipartition".into(),
            ));
        }
        Self::new(vec![0], (1..n_factors).collect(), n_factors)
    }

    /// Parses `"0,1/2,3"`.
    pub fn parse(spec: &str, n_factors: usize) -> Result<Self> {
        let parts: Vec<&str> = spec.split('/').collect();
        if parts.len() != 2 {
            return Err(MeasureError::InvalidArgument(format!(
                "cut {spec:?} must contain exactly one '/'"
            )));
        }
        let group = |s: &str| -> Result<Vec<usize>> {
            s.split(',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.trim().parse::<usize>().map_err(|_| {
                        MeasureError::InvalidArgument(format!("bad factor index {t:?} in cut"))
                    })
                })
                .collect()
        };
        Self::new(group(parts[0])?, group(parts[1])?, n_factors)
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }
}

impl std::fmt::Display for Bipartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fmt_group = |g: &[usize]| -> String {
            g.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{}/{}", fmt_group(&self.left), fmt_group(&self.right))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_displays() {
        let c = Bipartition::parse("0,2/1,3", 4).unwrap();
        assert_eq!(c.left(), &[0, 2]);
        assert_eq!(c.right(), &[1, 3]);
        assert_eq!(c.to_string(), "0,2/1,3");
    }

    #[test]
    fn rejects_bad_cuts() {
        assert!(Bipartition::parse("0/1,1", 3).is_err());
        assert!(Bipartition::parse("0/1", 3).is_err());
        assert!(Bipartition::parse("0,1,2/", 3).is_err());
        assert!(Bipartition::parse("0-1/2", 3).is_err());
        assert!(Bipartition::new(vec![], vec![0], 1).is_err());
    }
}

//! Semivalue power indices and the weak-desirability relation.
//!
//! A semivalue weights each coalition size: `Φ(i) = Σ_k λ_k c_i(k)`, with
//! `λ_k >= 0` and `Σ_k λ_k C(n-1, k-1) = 1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::coalition::CountVector;
use crate::exact_comb::{binomial, Ratio};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemivalueError {
    #[error("a weighting vector needs at least one player")]
    Empty,
    #[error("weight for size {k} is negative")]
    Negative { k: usize },
    #[error("weights are not normalized: sum of λ_k C(n-1, k-1) is {sum}, expected 1")]
    NotNormalized { sum: Ratio },
    #[error("size {k} outside [1, {n}]")]
    SizeOutOfRange { k: u64, n: usize },
    #[error("expected {expected} weights, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },
}

/// Normalized non-negative weights `λ_1..λ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightingVector {
    weights: Vec<Ratio>,
}

impl WeightingVector {
    /// Validates non-negativity and exact normalization.
    pub fn new(weights: Vec<Ratio>) -> Result<Self, SemivalueError> {
        if weights.is_empty() {
            return Err(SemivalueError::Empty);
        }
        if let Some(k) = weights.iter().position(|w| w.is_negative()) {
            return Err(SemivalueError::Negative { k: k + 1 });
        }
        let n = weights.len() as u64;
        let sum: Ratio = weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(i, w)| w * Ratio::from_integer(binomial(n - 1, i as i64).into()))
            .sum();
        if !sum.is_one() {
            return Err(SemivalueError::NotNormalized { sum });
        }
        Ok(Self { weights })
    }

    /// `λ_k = 1 / 2^(n-1)`.
    pub fn banzhaf(n: usize) -> Result<Self, SemivalueError> {
        if n == 0 {
            return Err(SemivalueError::Empty);
        }
        let w = Ratio::new(BigInt::one(), BigInt::one() << (n - 1));
        Self::new(vec![w; n])
    }

    /// `λ_k = 1 / (n C(n-1, k-1))`.
    pub fn shapley_shubik(n: usize) -> Result<Self, SemivalueError> {
        if n == 0 {
            return Err(SemivalueError::Empty);
        }
        let weights = (0..n)
            .map(|i| {
                let den = binomial(n as u64 - 1, i as i64) * n;
                Ratio::new(BigInt::one(), den.into())
            })
            .collect();
        Self::new(weights)
    }

    /// All weight on coalitions of size `k`: `λ_k = 1 / C(n-1, k-1)`.
    pub fn point_mass(n: usize, k: u64) -> Result<Self, SemivalueError> {
        if k == 0 || k as usize > n {
            return Err(SemivalueError::SizeOutOfRange { k, n });
        }
        let mut weights = vec![Ratio::zero(); n];
        weights[k as usize - 1] = Ratio::new(
            BigInt::one(),
            binomial(n as u64 - 1, k as i64 - 1).into(),
        );
        Self::new(weights)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weight of coalition size `k` (1-based).
    pub fn weight(&self, k: u64) -> Option<&Ratio> {
        k.checked_sub(1).and_then(|i| self.weights.get(i as usize))
    }

    pub fn weights(&self) -> &[Ratio] {
        &self.weights
    }

    /// `Σ_k λ_k c(k)`.
    pub fn evaluate(&self, cv: &CountVector) -> Result<Ratio, SemivalueError> {
        let n = self.weights.len();
        if let Some((lo, hi)) = cv.bounds() {
            if lo == 0 {
                return Err(SemivalueError::SizeOutOfRange { k: lo, n });
            }
            if hi as usize > n {
                return Err(SemivalueError::SizeOutOfRange { k: hi, n });
            }
        }
        Ok(cv
            .iter()
            .map(|(k, c)| &self.weights[k as usize - 1] * Ratio::from_integer(c.clone().into()))
            .sum())
    }
}

/// Weak desirability of player `i` relative to player `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `c_i(k) > c_j(k)` wherever the two are not both zero.
    StrictlyAbove,
    /// `c_i >= c_j` everywhere, with a tie at some size where both are nonzero.
    WeaklyAbove,
    Equal,
    WeaklyBelow,
    StrictlyBelow,
    /// `c_i(above_at) > c_j(above_at)` and `c_i(below_at) < c_j(below_at)`,
    /// each the smallest such size.
    Incomparable { above_at: u64, below_at: u64 },
}

impl Relation {
    pub fn reversed(self) -> Self {
        match self {
            Relation::StrictlyAbove => Relation::StrictlyBelow,
            Relation::WeaklyAbove => Relation::WeaklyBelow,
            Relation::Equal => Relation::Equal,
            Relation::WeaklyBelow => Relation::WeaklyAbove,
            Relation::StrictlyBelow => Relation::StrictlyAbove,
            Relation::Incomparable { above_at, below_at } => Relation::Incomparable {
                above_at: below_at,
                below_at: above_at,
            },
        }
    }

    /// `i ⪰ j`.
    pub fn is_at_least(self) -> bool {
        matches!(
            self,
            Relation::StrictlyAbove | Relation::WeaklyAbove | Relation::Equal
        )
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::StrictlyAbove => "≻",
            Relation::WeaklyAbove => "⪰",
            Relation::Equal => "=",
            Relation::WeaklyBelow => "⪯",
            Relation::StrictlyBelow => "≺",
            Relation::Incomparable { .. } => "incomparable",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Relation::StrictlyAbove => "StrictlyAbove",
            Relation::WeaklyAbove => "WeaklyAbove",
            Relation::Equal => "Equal",
            Relation::WeaklyBelow => "WeaklyBelow",
            Relation::StrictlyBelow => "StrictlyBelow",
            Relation::Incomparable { .. } => "Incomparable",
        }
    }
}

pub fn weak_desirability(ci: &CountVector, cj: &CountVector) -> Relation {
    let bounds: Vec<(u64, u64)> = [ci.bounds(), cj.bounds()].into_iter().flatten().collect();
    let (Some(lo), Some(hi)) = (
        bounds.iter().map(|b| b.0).min(),
        bounds.iter().map(|b| b.1).max(),
    ) else {
        return Relation::Equal;
    };
    let mut above_at = None;
    let mut below_at = None;
    let mut tie_with_nonzero = false;
    for k in lo..=hi {
        let (a, b) = (ci.get(k), cj.get(k));
        match a.cmp(&b) {
            std::cmp::Ordering::Greater => {
                above_at.get_or_insert(k);
            }
            std::cmp::Ordering::Less => {
                below_at.get_or_insert(k);
            }
            std::cmp::Ordering::Equal => tie_with_nonzero |= !a.is_zero(),
        }
    }
    match (above_at, below_at) {
        (Some(above_at), Some(below_at)) => Relation::Incomparable { above_at, below_at },
        (Some(_), None) if tie_with_nonzero => Relation::WeaklyAbove,
        (Some(_), None) => Relation::StrictlyAbove,
        (None, Some(_)) if tie_with_nonzero => Relation::WeaklyBelow,
        (None, Some(_)) => Relation::StrictlyBelow,
        (None, None) => Relation::Equal,
    }
}

/// For incomparable players, two point-mass indices ranking them in opposite
/// orders: the first puts `i` above `j`, the second puts `j` above `i`.
pub fn distinguishing_indices(
    ci: &CountVector,
    cj: &CountVector,
    n: usize,
) -> Result<Option<(WeightingVector, WeightingVector)>, SemivalueError> {
    match weak_desirability(ci, cj) {
        Relation::Incomparable { above_at, below_at } => Ok(Some((
            WeightingVector::point_mass(n, above_at)?,
            WeightingVector::point_mass(n, below_at)?,
        ))),
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_comb::Natural;

    fn r(n: i64, d: i64) -> Ratio {
        Ratio::new(n.into(), d.into())
    }

    fn cv(entries: &[(u64, u64)]) -> CountVector {
        CountVector::from_entries(entries.iter().map(|&(k, c)| (k, Natural::from(c))))
    }

    #[test]
    fn constructor_examples() {
        assert_eq!(WeightingVector::banzhaf(3).unwrap().weights(), &vec![r(1, 4); 3][..]);
        assert_eq!(WeightingVector::banzhaf(1).unwrap().weights(), &[r(1, 1)]);
        assert_eq!(
            WeightingVector::shapley_shubik(3).unwrap().weights(),
            &[r(1, 3), r(1, 6), r(1, 3)]
        );
        assert_eq!(
            WeightingVector::shapley_shubik(2).unwrap().weights(),
            &[r(1, 2), r(1, 2)]
        );
        assert_eq!(
            WeightingVector::point_mass(3, 2).unwrap().weights(),
            &[r(0, 1), r(1, 2), r(0, 1)]
        );
        assert_eq!(
            WeightingVector::point_mass(5, 5).unwrap().weights(),
            &[r(0, 1), r(0, 1), r(0, 1), r(0, 1), r(1, 1)]
        );
        let w = WeightingVector::point_mass(9, 6).unwrap();
        assert_eq!(w.weight(6).unwrap(), &r(1, 56));
    }

    #[test]
    fn large_constructors_normalize() {
        let b = WeightingVector::banzhaf(537).unwrap();
        assert_eq!(
            b.weight(1).unwrap(),
            &Ratio::new(BigInt::one(), BigInt::one() << 536)
        );
        let s = WeightingVector::shapley_shubik(537).unwrap();
        assert_eq!(
            s.weight(270).unwrap(),
            &Ratio::new(BigInt::one(), (binomial(536, 269) * 537u32).into())
        );
    }

    #[test]
    fn constructor_errors() {
        assert!(matches!(
            WeightingVector::point_mass(3, 0),
            Err(SemivalueError::SizeOutOfRange { .. })
        ));
        assert!(matches!(
            WeightingVector::point_mass(3, 4),
            Err(SemivalueError::SizeOutOfRange { .. })
        ));
        assert!(matches!(
            WeightingVector::new(vec![r(1, 2), r(1, 2), r(1, 2)]),
            Err(SemivalueError::NotNormalized { .. })
        ));
        assert!(matches!(
            WeightingVector::new(vec![r(-1, 2), r(1, 1), r(1, 4)]),
            Err(SemivalueError::Negative { k: 1 })
        ));
        assert_eq!(WeightingVector::new(vec![]), Err(SemivalueError::Empty));
    }

    #[test]
    fn evaluate_examples() {
        let majority = cv(&[(2, 2)]);
        assert_eq!(
            WeightingVector::banzhaf(3).unwrap().evaluate(&majority).unwrap(),
            r(1, 2)
        );
        assert_eq!(
            WeightingVector::shapley_shubik(3)
                .unwrap()
                .evaluate(&majority)
                .unwrap(),
            r(1, 3)
        );
        assert_eq!(
            WeightingVector::banzhaf(3)
                .unwrap()
                .evaluate(&CountVector::new())
                .unwrap(),
            r(0, 1)
        );
        assert!(matches!(
            WeightingVector::banzhaf(3).unwrap().evaluate(&cv(&[(4, 1)])),
            Err(SemivalueError::SizeOutOfRange { k: 4, .. })
        ));
        assert!(WeightingVector::banzhaf(3)
            .unwrap()
            .evaluate(&cv(&[(0, 1)]))
            .is_err());
    }

    #[test]
    fn relation_cases() {
        let a = cv(&[(2, 3), (3, 2)]);
        let b = cv(&[(2, 1), (3, 1)]);
        assert_eq!(weak_desirability(&a, &b), Relation::StrictlyAbove);
        assert_eq!(weak_desirability(&b, &a), Relation::StrictlyBelow);
        let c = cv(&[(2, 3), (3, 1)]);
        assert_eq!(weak_desirability(&a, &c), Relation::WeaklyAbove);
        assert_eq!(weak_desirability(&c, &a), Relation::WeaklyBelow);
        assert_eq!(weak_desirability(&a, &a), Relation::Equal);
        let d = cv(&[(2, 1), (3, 5), (4, 1)]);
        assert_eq!(
            weak_desirability(&a, &d),
            Relation::Incomparable {
                above_at: 2,
                below_at: 3
            }
        );
        assert_eq!(weak_desirability(&d, &a), weak_desirability(&a, &d).reversed());
        assert_eq!(
            weak_desirability(&CountVector::new(), &CountVector::new()),
            Relation::Equal
        );
    }

    #[test]
    fn distinguishing_indices_distinguish() {
        let a = cv(&[(2, 3), (3, 2)]);
        let d = cv(&[(2, 1), (3, 5)]);
        let (phi, psi) = distinguishing_indices(&a, &d, 4).unwrap().unwrap();
        assert!(phi.evaluate(&a).unwrap() > phi.evaluate(&d).unwrap());
        assert!(psi.evaluate(&a).unwrap() < psi.evaluate(&d).unwrap());
        assert!(distinguishing_indices(&a, &a, 4).unwrap().is_none());
    }
}

//! Closed-form critical numbers for members of multicameral legislatures.
//!
//! A bill passes when every chamber meets its quota. A member of chamber `j`
//! is critical in a coalition exactly when the coalition holds `q_j` members
//! of chamber `j` (including them) and meets every other quota, which gives
//! `c_j(k) = C(m_j - 1, q_j - 1) * U_others(k - q_j)`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use num_traits::Zero;
use thiserror::Error;

use crate::coalition::{template_counts, CoalitionTemplate, CountVector, PoolConstraint};
use crate::exact_comb::{certify_comparison, CertOutcome, House};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LegislatureError {
    #[error("chamber `{name}`: quota {quota} must satisfy 1 <= quota <= size ({size})")]
    InvalidQuota { name: String, size: u64, quota: u64 },
    #[error("chamber name must not be empty")]
    EmptyName,
    #[error("a legislature needs at least one chamber")]
    NoChambers,
    #[error("duplicate chamber name `{0}`")]
    DuplicateName(String),
    #[error("unknown chamber `{0}`")]
    UnknownChamber(String),
    #[error("cannot compare chamber `{0}` with itself")]
    SameChamber(String),
    #[error("bicameral classification needs the smaller size first, got {small} and {large}")]
    NotOrdered { small: u64, large: u64 },
    #[error("certificate contradicts exact evaluation at coalition size {k}")]
    CertificateContradiction { k: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChamberSpec {
    name: String,
    size: u64,
    quota: u64,
}

impl ChamberSpec {
    pub fn new(name: impl Into<String>, size: u64, quota: u64) -> Result<Self, LegislatureError> {
        let name = name.into();
        if name.is_empty() {
            return Err(LegislatureError::EmptyName);
        }
        if quota == 0 || quota > size {
            return Err(LegislatureError::InvalidQuota { name, size, quota });
        }
        Ok(Self { name, size, quota })
    }

    /// Chamber passing bills by simple majority.
    pub fn majority(name: impl Into<String>, size: u64) -> Result<Self, LegislatureError> {
        Self::new(name, size, majority_quota(size))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn quota(&self) -> u64 {
        self.quota
    }

    pub fn house(&self) -> House {
        House::new(self.size, self.quota)
    }
}

/// Chambers that must all reach their quota for a bill to pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticamSpec {
    chambers: Vec<ChamberSpec>,
}

impl MulticamSpec {
    pub fn new(chambers: Vec<ChamberSpec>) -> Result<Self, LegislatureError> {
        if chambers.is_empty() {
            return Err(LegislatureError::NoChambers);
        }
        let mut seen = HashSet::new();
        for c in &chambers {
            if !seen.insert(c.name.as_str()) {
                return Err(LegislatureError::DuplicateName(c.name.clone()));
            }
        }
        Ok(Self { chambers })
    }

    /// Two chambers named `senate` and `house`.
    pub fn bicameral(
        senate_size: u64,
        senate_quota: u64,
        house_size: u64,
        house_quota: u64,
    ) -> Result<Self, LegislatureError> {
        Self::new(vec![
            ChamberSpec::new("senate", senate_size, senate_quota)?,
            ChamberSpec::new("house", house_size, house_quota)?,
        ])
    }

    /// Builds unnamed chambers `c1, c2, ...` from `(size, quota)` pairs.
    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self, LegislatureError> {
        Self::new(
            pairs
                .iter()
                .enumerate()
                .map(|(i, &(m, q))| ChamberSpec::new(format!("c{}", i + 1), m, q))
                .collect::<Result<_, _>>()?,
        )
    }

    pub fn chambers(&self) -> &[ChamberSpec] {
        &self.chambers
    }

    pub fn chamber(&self, name: &str) -> Result<&ChamberSpec, LegislatureError> {
        self.position(name).map(|i| &self.chambers[i])
    }

    fn position(&self, name: &str) -> Result<usize, LegislatureError> {
        self.chambers
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| LegislatureError::UnknownChamber(name.to_string()))
    }

    pub fn total_members(&self) -> u64 {
        self.chambers.iter().map(|c| c.size).sum()
    }
}

/// `⌈(m + 1) / 2⌉`.
pub fn majority_quota(m: u64) -> u64 {
    m / 2 + 1
}

/// Critical numbers of any one member of `chamber`.
pub fn member_critical_vector(
    spec: &MulticamSpec,
    chamber: &str,
) -> Result<CountVector, LegislatureError> {
    let j = spec.position(chamber)?;
    let own = &spec.chambers[j];
    let mut pools = vec![PoolConstraint::exactly(own.size - 1, own.quota - 1)
        .expect("quota <= size checked at construction")];
    for (i, c) in spec.chambers.iter().enumerate() {
        if i != j {
            pools.push(PoolConstraint::new(c.size, c.quota, c.size).expect("valid chamber"));
        }
    }
    Ok(template_counts(&CoalitionTemplate::new(1, pools)))
}

/// Which of the two compared members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn other(self) -> Self {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dominance {
    /// Leader strictly ahead at every size where the two are not both zero.
    Strict,
    /// Leader never behind, tied at some size where both are nonzero.
    Weak,
    Equal,
    /// Each side strictly ahead somewhere.
    Crossover,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonVerdict {
    pub relation: Dominance,
    /// `None` only for [`Dominance::Equal`]. For a crossover, the side that is
    /// strictly ahead at more sizes (ties go to the side ahead at the largest
    /// differing size).
    pub leader: Option<Side>,
    /// Sizes at which the non-leading side is strictly ahead.
    pub crossover_sizes: BTreeSet<u64>,
    /// `first.cmp(second)` at every size where they are not both zero.
    pub per_k: Vec<(u64, Ordering)>,
}

impl ComparisonVerdict {
    /// Classifies two critical vectors.
    pub fn from_vectors(first: &CountVector, second: &CountVector) -> Self {
        let per_k: Vec<(u64, Ordering)> = size_range(first, second)
            .filter_map(|k| {
                let (a, b) = (first.get(k), second.get(k));
                (!(a.is_zero() && b.is_zero())).then(|| (k, a.cmp(&b)))
            })
            .collect();
        let ahead = |o: Ordering| per_k.iter().filter(|(_, s)| *s == o).count();
        let (first_ahead, second_ahead) = (ahead(Ordering::Greater), ahead(Ordering::Less));
        let ties = per_k.len() - first_ahead - second_ahead;

        let (relation, leader) = match (first_ahead, second_ahead) {
            (0, 0) => (Dominance::Equal, None),
            (_, 0) => (weak_or_strict(ties), Some(Side::First)),
            (0, _) => (weak_or_strict(ties), Some(Side::Second)),
            (f, s) => {
                let leader = match f.cmp(&s) {
                    Ordering::Greater => Side::First,
                    Ordering::Less => Side::Second,
                    Ordering::Equal => {
                        let last = per_k
                            .iter()
                            .rev()
                            .find(|(_, o)| *o != Ordering::Equal)
                            .map(|(_, o)| *o);
                        if last == Some(Ordering::Greater) {
                            Side::First
                        } else {
                            Side::Second
                        }
                    }
                };
                (Dominance::Crossover, Some(leader))
            }
        };
        let crossover_sizes = match (relation, leader) {
            (Dominance::Crossover, Some(side)) => {
                let trailing_ahead = match side {
                    Side::First => Ordering::Less,
                    Side::Second => Ordering::Greater,
                };
                per_k
                    .iter()
                    .filter(|(_, o)| *o == trailing_ahead)
                    .map(|(k, _)| *k)
                    .collect()
            }
            _ => BTreeSet::new(),
        };
        Self {
            relation,
            leader,
            crossover_sizes,
            per_k,
        }
    }

    /// The same verdict with the two sides exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            relation: self.relation,
            leader: self.leader.map(Side::other),
            crossover_sizes: self.crossover_sizes.clone(),
            per_k: self.per_k.iter().map(|(k, o)| (*k, o.reverse())).collect(),
        }
    }
}

fn weak_or_strict(ties: usize) -> Dominance {
    if ties == 0 {
        Dominance::Strict
    } else {
        Dominance::Weak
    }
}

fn size_range(a: &CountVector, b: &CountVector) -> std::ops::RangeInclusive<u64> {
    let bounds = [a.bounds(), b.bounds()];
    let lo = bounds.iter().flatten().map(|&(l, _)| l).min();
    let hi = bounds.iter().flatten().map(|&(_, h)| h).max();
    match (lo, hi) {
        (Some(lo), Some(hi)) => lo..=hi,
        #[allow(clippy::reversed_empty_ranges)]
        _ => 1..=0,
    }
}

/// Compares a member of chamber `a` with a member of chamber `b`.
///
/// For two-chamber legislatures with non-degenerate quotas the exact result is
/// also checked against the small-integer certificate; a disagreement is
/// reported as an error.
pub fn compare_members(
    spec: &MulticamSpec,
    a: &str,
    b: &str,
) -> Result<ComparisonVerdict, LegislatureError> {
    if a == b {
        return Err(LegislatureError::SameChamber(a.to_string()));
    }
    let ca = member_critical_vector(spec, a)?;
    let cb = member_critical_vector(spec, b)?;
    if spec.chambers.len() == 2 {
        let (ha, hb) = (spec.chamber(a)?.house(), spec.chamber(b)?.house());
        check_certificate(ha, hb, &ca, &cb)?;
        check_certificate(hb, ha, &cb, &ca)?;
    }
    Ok(ComparisonVerdict::from_vectors(&ca, &cb))
}

fn check_certificate(
    a: House,
    b: House,
    ca: &CountVector,
    cb: &CountVector,
) -> Result<(), LegislatureError> {
    // Degenerate quotas fall outside the certificate's domain.
    let Ok(cert) = certify_comparison(a, b) else {
        return Ok(());
    };
    for (k, verdict) in cert {
        let ok = match verdict.outcome {
            CertOutcome::CertifiedGreater => ca.get(k) > cb.get(k),
            CertOutcome::CertifiedEqual => ca.get(k) == cb.get(k),
            CertOutcome::NotCertified => true,
        };
        if !ok {
            return Err(LegislatureError::CertificateContradiction { k });
        }
    }
    Ok(())
}

/// Parity/gap regime of a bicameral legislature under majority quotas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseClass {
    BothOdd,
    BothEven,
    SmallEvenLargeOdd,
    /// Small odd, large even, large more than twice the small.
    SmallOddLargeEvenWide,
    /// Small odd, large exactly twice the small.
    SmallOddLargeEvenMax,
    /// Small odd, large one more than the small.
    SmallOddLargeEvenMinGap,
    SmallOddLargeEvenMiddle,
}

impl CaseClass {
    /// Regimes in which the smaller chamber dominates regardless of index.
    pub fn small_always_dominates(self) -> bool {
        matches!(
            self,
            CaseClass::BothOdd
                | CaseClass::BothEven
                | CaseClass::SmallEvenLargeOdd
                | CaseClass::SmallOddLargeEvenWide
        )
    }
}

pub fn classify_bicameral(small: u64, large: u64) -> Result<CaseClass, LegislatureError> {
    if small == 0 || small >= large {
        return Err(LegislatureError::NotOrdered { small, large });
    }
    let class = match (small % 2 == 1, large % 2 == 1) {
        (true, true) => CaseClass::BothOdd,
        (false, false) => CaseClass::BothEven,
        (false, true) => CaseClass::SmallEvenLargeOdd,
        (true, false) if large > 2 * small => CaseClass::SmallOddLargeEvenWide,
        (true, false) if large == 2 * small => CaseClass::SmallOddLargeEvenMax,
        (true, false) if large == small + 1 => CaseClass::SmallOddLargeEvenMinGap,
        (true, false) => CaseClass::SmallOddLargeEvenMiddle,
    };
    Ok(class)
}

/// Sizes at which a member of the larger chamber has strictly more critical
/// coalitions than a member of the smaller one.
pub fn crossover_sizes(
    small_size: u64,
    small_quota: u64,
    large_size: u64,
    large_quota: u64,
) -> Result<BTreeSet<u64>, LegislatureError> {
    let spec = MulticamSpec::bicameral(small_size, small_quota, large_size, large_quota)?;
    let small = member_critical_vector(&spec, "senate")?;
    let large = member_critical_vector(&spec, "house")?;
    Ok(large
        .iter()
        .filter(|(k, c)| **c > small.get(*k))
        .map(|(k, _)| k)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_comb::Natural;

    fn cv(entries: &[(u64, u64)]) -> CountVector {
        CountVector::from_entries(entries.iter().map(|&(k, c)| (k, Natural::from(c))))
    }

    #[test]
    fn majority_quota_examples() {
        assert_eq!(majority_quota(100), 51);
        assert_eq!(majority_quota(435), 218);
        assert_eq!(majority_quota(5), 3);
        assert_eq!(majority_quota(101), 51);
        assert_eq!(majority_quota(1), 1);
    }

    #[test]
    fn member_vector_examples() {
        let spec = MulticamSpec::from_pairs(&[(3, 2), (5, 3)]).unwrap();
        assert_eq!(
            member_critical_vector(&spec, "c1").unwrap(),
            cv(&[(5, 20), (6, 10), (7, 2)])
        );
        assert_eq!(
            member_critical_vector(&spec, "c2").unwrap(),
            cv(&[(5, 18), (6, 6)])
        );
        let single = MulticamSpec::from_pairs(&[(3, 2)]).unwrap();
        assert_eq!(member_critical_vector(&single, "c1").unwrap(), cv(&[(2, 2)]));
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            ChamberSpec::new("x", 3, 0),
            Err(LegislatureError::InvalidQuota { .. })
        ));
        assert!(matches!(
            ChamberSpec::new("x", 3, 4),
            Err(LegislatureError::InvalidQuota { .. })
        ));
        assert_eq!(MulticamSpec::new(vec![]), Err(LegislatureError::NoChambers));
        let c = ChamberSpec::new("x", 3, 2).unwrap();
        assert!(matches!(
            MulticamSpec::new(vec![c.clone(), c]),
            Err(LegislatureError::DuplicateName(_))
        ));
        let spec = MulticamSpec::from_pairs(&[(3, 2)]).unwrap();
        assert!(matches!(
            member_critical_vector(&spec, "nope"),
            Err(LegislatureError::UnknownChamber(_))
        ));
    }

    #[test]
    fn compare_examples() {
        let spec = MulticamSpec::from_pairs(&[(3, 2), (5, 3)]).unwrap();
        let v = compare_members(&spec, "c1", "c2").unwrap();
        assert_eq!(v.relation, Dominance::Strict);
        assert_eq!(v.leader, Some(Side::First));

        let spec = MulticamSpec::from_pairs(&[(3, 2), (4, 3)]).unwrap();
        let v = compare_members(&spec, "c2", "c1").unwrap();
        assert_eq!(v.relation, Dominance::Strict);
        assert_eq!(v.leader, Some(Side::First));

        let spec = MulticamSpec::from_pairs(&[(3, 2), (6, 4)]).unwrap();
        let v = compare_members(&spec, "c1", "c2").unwrap();
        assert_eq!(v.relation, Dominance::Weak);
        assert_eq!(v.leader, Some(Side::First));
        assert_eq!(
            v.per_k,
            vec![
                (6, Ordering::Equal),
                (7, Ordering::Greater),
                (8, Ordering::Greater)
            ]
        );
        assert!(matches!(
            compare_members(&spec, "c1", "c1"),
            Err(LegislatureError::SameChamber(_))
        ));
    }

    #[test]
    fn compare_is_antisymmetric() {
        let spec = MulticamSpec::from_pairs(&[(101, 51), (150, 76)]).unwrap();
        let ab = compare_members(&spec, "c1", "c2").unwrap();
        let ba = compare_members(&spec, "c2", "c1").unwrap();
        assert_eq!(ab.relation, Dominance::Crossover);
        assert_eq!(ab.leader, Some(Side::First));
        assert_eq!(ab.swapped(), ba);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_bicameral(3, 5).unwrap(), CaseClass::BothOdd);
        assert_eq!(
            classify_bicameral(101, 150).unwrap(),
            CaseClass::SmallOddLargeEvenMiddle
        );
        assert_eq!(classify_bicameral(3, 6).unwrap(), CaseClass::SmallOddLargeEvenMax);
        assert_eq!(classify_bicameral(3, 4).unwrap(), CaseClass::SmallOddLargeEvenMinGap);
        assert_eq!(classify_bicameral(3, 7).unwrap(), CaseClass::BothOdd);
        assert_eq!(classify_bicameral(3, 8).unwrap(), CaseClass::SmallOddLargeEvenWide);
        assert_eq!(classify_bicameral(4, 6).unwrap(), CaseClass::BothEven);
        assert_eq!(classify_bicameral(4, 7).unwrap(), CaseClass::SmallEvenLargeOdd);
        assert!(classify_bicameral(5, 5).is_err());
        assert!(classify_bicameral(6, 5).is_err());
    }

    #[test]
    fn crossover_examples() {
        assert_eq!(
            crossover_sizes(101, 51, 150, 76).unwrap(),
            BTreeSet::from([127, 128])
        );
        assert!(crossover_sizes(3, 2, 5, 3).unwrap().is_empty());
        assert_eq!(crossover_sizes(3, 2, 4, 3).unwrap(), BTreeSet::from([5, 6]));
    }
}

//! Exact binomial arithmetic and certified comparison of binomial products.
//!
//! A member of house `A` (size `m_a`, quota `q_a`) facing a single other
//! house `B` is critical in `C(m_a - 1, q_a - 1) * C(m_b, k - q_a)` coalitions
//! of size `k`. Comparing two such products for every `k` is the core question
//! of the bicameral analysis. [`first_product_exceeds`] answers it by direct
//! evaluation; [`certify_comparison`] answers it from small-integer conditions
//! only, so the two routes can be checked against each other.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision natural number.
pub type Natural = BigUint;

/// Exact rational, always held in lowest terms with a positive denominator.
pub type Ratio = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("f/g undefined for p={p}, u={u}, i={i}: need 0 < u < p and 0 <= i < p - u")]
    Domain { p: u64, u: u64, i: u64 },
    #[error("certificate needs 1 < quota < size for both houses, got ({size_a},{quota_a}) and ({size_b},{quota_b})")]
    CertificateDomain {
        size_a: u64,
        quota_a: u64,
        size_b: u64,
        quota_b: u64,
    },
}

/// `C(n, k)`, with the convention that the value is zero for `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> Natural {
    if k < 0 || k as u64 > n {
        return Natural::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Natural::one();
    for i in 0..k {
        // acc = C(n, i) here, and C(n, i) * (n - i) is divisible by (i + 1)
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Ratio of a binomial to the member's own within-house choice count:
/// `C(p, u + i) / C(p - 1, u - 1)`.
pub fn f_ratio(p: u64, u: u64, i: u64) -> Result<Ratio, CombError> {
    check_fg_domain(p, u, i)?;
    let num = binomial(p, (u + i) as i64);
    let den = binomial(p - 1, (u - 1) as i64);
    Ok(Ratio::new(num.into(), den.into()))
}

/// Step factor between consecutive [`f_ratio`] values: `(p - u - i) / (u + i + 1)`.
pub fn g_ratio(p: u64, u: u64, i: u64) -> Result<Ratio, CombError> {
    check_fg_domain(p, u, i)?;
    Ok(Ratio::new(
        BigInt::from(p - u - i),
        BigInt::from(u + i + 1),
    ))
}

fn check_fg_domain(p: u64, u: u64, i: u64) -> Result<(), CombError> {
    if u == 0 || u >= p || i >= p - u {
        return Err(CombError::Domain { p, u, i });
    }
    Ok(())
}

/// Size and passage quota of one house.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct House {
    pub size: u64,
    pub quota: u64,
}

impl House {
    pub const fn new(size: u64, quota: u64) -> Self {
        Self { size, quota }
    }
}

/// The two critical-number products of a two-house game at coalition size `k`:
/// `(C(m_a-1, q_a-1) * C(m_b, k-q_a), C(m_b-1, q_b-1) * C(m_a, k-q_b))`.
///
/// For `k >= q_a + q_b` these are exactly the critical numbers of a member of
/// house `a` and of house `b`.
pub fn critical_products(a: House, b: House, k: u64) -> (Natural, Natural) {
    let k = k as i64;
    let left = binomial(a.size - 1, a.quota as i64 - 1) * binomial(b.size, k - a.quota as i64);
    let right = binomial(b.size - 1, b.quota as i64 - 1) * binomial(a.size, k - b.quota as i64);
    (left, right)
}

/// Whether the house-`a` product strictly exceeds the house-`b` product at size `k`,
/// by direct big-integer evaluation.
pub fn first_product_exceeds(a: House, b: House, k: u64) -> bool {
    let (left, right) = critical_products(a, b, k);
    left > right
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertOutcome {
    CertifiedGreater,
    CertifiedEqual,
    NotCertified,
}

/// Which argument produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertBasis {
    /// Minimal-size comparison `q_a * m_b` against `q_b * m_a`.
    MinCase,
    /// Minimal-size advantage plus a step-factor advantage at offset zero.
    PropMainD,
    /// Advantage established at offset one and carried forward by the step factors.
    Corollary2,
    /// House-`b` product is zero by the support range while house `a` is not.
    Support,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CertVerdict {
    pub outcome: CertOutcome,
    pub basis: CertBasis,
}

impl CertVerdict {
    const UNKNOWN: Self = Self {
        outcome: CertOutcome::NotCertified,
        basis: CertBasis::None,
    };

    fn greater(basis: CertBasis) -> Self {
        Self {
            outcome: CertOutcome::CertifiedGreater,
            basis,
        }
    }
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

/// Compares `f(m_b, q_b, 0)` with `f(m_a, q_a, 0)`, i.e. `m_b / q_b` with `m_a / q_a`.
fn offset_zero_order(a: House, b: House) -> Ordering {
    (big(a.quota) * big(b.size)).cmp(&(big(b.quota) * big(a.size)))
}

/// Compares `f(m_b, q_b, 1)` with `f(m_a, q_a, 1)` using `f(p,u,1) = (p-u) p / ((u+1) u)`.
fn offset_one_order(a: House, b: House) -> Ordering {
    let lhs = big(b.size - b.quota) * big(b.size) * big(a.quota + 1) * big(a.quota);
    let rhs = big(a.size - a.quota) * big(a.size) * big(b.quota + 1) * big(b.quota);
    lhs.cmp(&rhs)
}

/// Compares `g(m_b, q_b, i)` with `g(m_a, q_a, i)` by cross-multiplying the
/// positive denominators. Numerators may go negative past a house's range.
fn step_order(a: House, b: House, i: u64) -> Ordering {
    let lhs = (big(b.size) - big(b.quota) - big(i)) * big(a.quota + i + 1);
    let rhs = (big(a.size) - big(a.quota) - big(i)) * big(b.quota + i + 1);
    lhs.cmp(&rhs)
}

/// Certifies, for each coalition size `k` in `[q_a + q_b, max(q_a + m_b, q_b + m_a)]`,
/// whether the house-`a` product exceeds (or equals) the house-`b` product,
/// using only comparisons of small integer expressions.
///
/// The step-factor propagation requires `m_a < m_b`; for other orderings only
/// the minimal-size and support verdicts are issued.
pub fn certify_comparison(a: House, b: House) -> Result<BTreeMap<u64, CertVerdict>, CombError> {
    if a.quota <= 1 || a.quota >= a.size || b.quota <= 1 || b.quota >= b.size {
        return Err(CombError::CertificateDomain {
            size_a: a.size,
            quota_a: a.quota,
            size_b: b.size,
            quota_b: b.quota,
        });
    }
    let k_min = a.quota + b.quota;
    let a_end = a.quota + b.size;
    let b_end = b.quota + a.size;
    let k_max = a_end.max(b_end);

    let mut verdicts: BTreeMap<u64, CertVerdict> =
        (k_min..=k_max).map(|k| (k, CertVerdict::UNKNOWN)).collect();

    let at_zero = offset_zero_order(a, b);
    match at_zero {
        Ordering::Greater => {
            verdicts.insert(k_min, CertVerdict::greater(CertBasis::MinCase));
        }
        Ordering::Equal => {
            verdicts.insert(
                k_min,
                CertVerdict {
                    outcome: CertOutcome::CertifiedEqual,
                    basis: CertBasis::MinCase,
                },
            );
        }
        Ordering::Less => {}
    }

    if a.size < b.size {
        let propagated = if at_zero == Ordering::Greater && step_order(a, b, 0) == Ordering::Greater
        {
            Some(CertBasis::PropMainD)
        } else if offset_one_order(a, b) == Ordering::Greater
            && step_order(a, b, 1) == Ordering::Greater
        {
            Some(CertBasis::Corollary2)
        } else {
            None
        };
        if let Some(basis) = propagated {
            // The house-a product stays positive up to k = q_a + m_b.
            for k in (k_min + 1)..=a_end {
                verdicts.insert(k, CertVerdict::greater(basis));
            }
        }
    }

    for k in (b_end + 1)..=a_end {
        let v = verdicts.get_mut(&k).expect("k within certificate range");
        if v.outcome == CertOutcome::NotCertified {
            *v = CertVerdict::greater(CertBasis::Support);
        }
    }
    Ok(verdicts)
}

//! Per-size coalition counting for "fixed members plus constrained picks
//! from disjoint anonymous pools".

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exact_comb::{binomial, Natural};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoalitionError {
    #[error("pool constraint needs min_pick <= max_pick <= pool_size, got pool_size={pool_size} min_pick={min_pick} max_pick={max_pick}")]
    InvalidPool {
        pool_size: u64,
        min_pick: u64,
        max_pick: u64,
    },
}

/// Exact counts indexed by coalition size.
///
/// Stored densely between the smallest and largest nonzero size, so two
/// vectors are equal exactly when they agree at every size. Interior zeros are
/// allowed: a sum of families can have a gap in its support.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct CountVector {
    start: u64,
    counts: Vec<Natural>,
}

impl CountVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// A single coalition of size `k`.
    pub fn unit(k: u64) -> Self {
        Self {
            start: k,
            counts: vec![Natural::from(1u32)],
        }
    }

    /// Builds from a dense run beginning at size `start`.
    pub fn from_dense(start: u64, counts: Vec<Natural>) -> Self {
        let mut v = Self { start, counts };
        v.trim();
        v
    }

    /// Builds from `(size, count)` pairs; repeated sizes are added.
    pub fn from_entries<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (u64, Natural)>,
    {
        let entries: Vec<(u64, Natural)> = entries.into_iter().collect();
        let Some(lo) = entries.iter().map(|(k, _)| *k).min() else {
            return Self::new();
        };
        let hi = entries.iter().map(|(k, _)| *k).max().unwrap_or(lo);
        let mut counts = vec![Natural::zero(); (hi - lo + 1) as usize];
        for (k, c) in entries {
            counts[(k - lo) as usize] += c;
        }
        Self::from_dense(lo, counts)
    }

    fn trim(&mut self) {
        let Some(first) = self.counts.iter().position(|c| !c.is_zero()) else {
            self.start = 0;
            self.counts.clear();
            return;
        };
        let last = self
            .counts
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(first);
        self.counts.truncate(last + 1);
        self.counts.drain(..first);
        self.start += first as u64;
    }

    pub fn is_zero(&self) -> bool {
        self.counts.is_empty()
    }

    /// Count at size `k`; zero outside the stored run.
    pub fn get(&self, k: u64) -> Natural {
        self.get_ref(k).cloned().unwrap_or_default()
    }

    fn get_ref(&self, k: u64) -> Option<&Natural> {
        k.checked_sub(self.start)
            .and_then(|off| self.counts.get(off as usize))
    }

    /// `(smallest, largest)` size with a nonzero count.
    pub fn bounds(&self) -> Option<(u64, u64)> {
        if self.counts.is_empty() {
            None
        } else {
            Some((self.start, self.start + self.counts.len() as u64 - 1))
        }
    }

    /// Nonzero entries in increasing size order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &Natural)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as u64, c))
    }

    /// Sizes with a nonzero count.
    pub fn support(&self) -> Vec<u64> {
        self.iter().map(|(k, _)| k).collect()
    }

    /// True when the nonzero sizes form one integer interval (or none).
    pub fn is_contiguous(&self) -> bool {
        self.counts.iter().all(|c| !c.is_zero())
    }

    pub fn total(&self) -> Natural {
        self.counts.iter().sum()
    }

    pub fn scaled(&self, factor: &Natural) -> Self {
        Self::from_dense(self.start, self.counts.iter().map(|c| c * factor).collect())
    }

    pub fn shifted(&self, by: u64) -> Self {
        if self.is_zero() {
            return Self::new();
        }
        Self {
            start: self.start + by,
            counts: self.counts.clone(),
        }
    }

    /// Coefficient-wise product of the two size generating functions.
    pub fn convolve(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new();
        }
        let mut out = vec![Natural::zero(); self.counts.len() + other.counts.len() - 1];
        for (i, a) in self.counts.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.counts.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_dense(self.start + other.start, out)
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self.bounds(), other.bounds()) {
            (None, _) => other.clone(),
            (_, None) => self.clone(),
            (Some((lo_a, hi_a)), Some((lo_b, hi_b))) => {
                let lo = lo_a.min(lo_b);
                let hi = hi_a.max(hi_b);
                let counts = (lo..=hi)
                    .map(|k| {
                        let mut c = self.get(k);
                        if let Some(x) = other.get_ref(k) {
                            c += x;
                        }
                        c
                    })
                    .collect();
                Self::from_dense(lo, counts)
            }
        }
    }
}

impl fmt::Debug for CountVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

/// How many members to take from one anonymous pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PoolConstraint {
    pool_size: u64,
    min_pick: u64,
    max_pick: u64,
}

impl PoolConstraint {
    pub fn new(pool_size: u64, min_pick: u64, max_pick: u64) -> Result<Self, CoalitionError> {
        if min_pick > max_pick || max_pick > pool_size {
            return Err(CoalitionError::InvalidPool {
                pool_size,
                min_pick,
                max_pick,
            });
        }
        Ok(Self {
            pool_size,
            min_pick,
            max_pick,
        })
    }

    /// Exactly `pick` members.
    pub fn exactly(pool_size: u64, pick: u64) -> Result<Self, CoalitionError> {
        Self::new(pool_size, pick, pick)
    }

    pub fn pool_size(&self) -> u64 {
        self.pool_size
    }

    pub fn min_pick(&self) -> u64 {
        self.min_pick
    }

    pub fn max_pick(&self) -> u64 {
        self.max_pick
    }

    /// Entry `a` is `C(pool_size, a)` for `a` in `[min_pick, max_pick]`.
    pub fn counts(&self) -> CountVector {
        CountVector::from_dense(
            self.min_pick,
            (self.min_pick..=self.max_pick)
                .map(|a| binomial(self.pool_size, a as i64))
                .collect(),
        )
    }
}

/// Members present in every coalition plus independent picks from disjoint pools.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoalitionTemplate {
    pub fixed_count: u64,
    pub pools: Vec<PoolConstraint>,
}

impl CoalitionTemplate {
    pub fn new(fixed_count: u64, pools: Vec<PoolConstraint>) -> Self {
        Self { fixed_count, pools }
    }

    /// Number of distinct members the template ranges over.
    pub fn universe(&self) -> u64 {
        self.fixed_count + self.pools.iter().map(|p| p.pool_size).sum::<u64>()
    }
}

pub fn template_counts(t: &CoalitionTemplate) -> CountVector {
    t.pools
        .iter()
        .fold(CountVector::unit(t.fixed_count), |acc, pool| {
            acc.convolve(&pool.counts())
        })
}

/// Per-size counts of member sets drawn from the given `(size, quota)` houses
/// in which every house meets its quota.
pub fn u_vector(chambers: &[(u64, u64)]) -> CountVector {
    // A quota above the house size can never be met.
    let pools: Option<Vec<PoolConstraint>> = chambers
        .iter()
        .map(|&(m, q)| PoolConstraint::new(m, q, m).ok())
        .collect();
    match pools {
        Some(pools) => template_counts(&CoalitionTemplate::new(0, pools)),
        None => CountVector::new(),
    }
}

/// Number of size-`k` member sets meeting every house quota.
pub fn u_count(chambers: &[(u64, u64)], k: u64) -> Natural {
    u_vector(chambers).get(k)
}

/// Pointwise sum. Callers are responsible for the families being disjoint.
pub fn sum_counts(vs: &[CountVector]) -> CountVector {
    vs.iter().fold(CountVector::new(), |acc, v| acc.add(v))
}

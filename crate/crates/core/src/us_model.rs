//! A president, a tie-breaking vice president, a senate and a house, with a
//! signature track and a veto-override track.
//!
//! A coalition passes a bill when either
//!
//! - it holds the president, at least `q_r` representatives and at least
//!   `q_s` senators, or exactly `q_s - 1` senators plus the vice president
//!   when `q_s - 1` is exactly half the senate (a tie), or
//! - it holds at least `o_s` senators and `o_r` representatives.
//!
//! Critical numbers are sums over row templates (`P1`..`P4`, `S1`..`S3`,
//! `R1`..`R3`, `V`), each a family of coalitions with fixed members and
//! quota-constrained picks from the senate, the house, or the full senate
//! (senators plus vice president).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::coalition::{sum_counts, template_counts, CoalitionTemplate, CountVector, PoolConstraint};
use crate::exact_comb::Ratio;
use crate::legislature::majority_quota;
use crate::semivalues::{weak_desirability, Relation, SemivalueError, WeightingVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UsModelError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("{0} is not part of this spec")]
    AbsentClass(PlayerClass),
    #[error("senate quota {quota} outside [{min}, {max}]")]
    QuotaOutOfRange { quota: u64, min: u64, max: u64 },
    #[error(transparent)]
    Semivalue(#[from] SemivalueError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlayerClass {
    President,
    VicePresident,
    Senator,
    Representative,
}

impl PlayerClass {
    pub const ALL: [PlayerClass; 4] = [
        PlayerClass::President,
        PlayerClass::VicePresident,
        PlayerClass::Senator,
        PlayerClass::Representative,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PlayerClass::President => "president",
            PlayerClass::VicePresident => "vice_president",
            PlayerClass::Senator => "senator",
            PlayerClass::Representative => "representative",
        }
    }
}

impl fmt::Display for PlayerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PlayerClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "president" | "p" => Ok(PlayerClass::President),
            "vice_president" | "vice-president" | "vp" | "v" => Ok(PlayerClass::VicePresident),
            "senator" | "s" => Ok(PlayerClass::Senator),
            "representative" | "rep" | "r" => Ok(PlayerClass::Representative),
            other => Err(format!("unknown player class `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UsSpec {
    pub senate_size: u64,
    pub house_size: u64,
    /// Senators needed alongside the president's signature.
    pub senate_quota: u64,
    pub house_quota: u64,
    /// Senators needed to override a veto.
    pub senate_override: u64,
    pub house_override: u64,
    pub has_president: bool,
    pub has_vp: bool,
}

impl Default for UsSpec {
    fn default() -> Self {
        Self {
            senate_size: 100,
            house_size: 435,
            senate_quota: 51,
            house_quota: 218,
            senate_override: 67,
            house_override: 290,
            has_president: true,
            has_vp: true,
        }
    }
}

impl UsSpec {
    pub fn validate(&self) -> Result<(), UsModelError> {
        let check = |ok: bool, msg: &str| {
            if ok {
                Ok(())
            } else {
                Err(UsModelError::InvalidSpec(msg.to_string()))
            }
        };
        check(self.senate_size >= 1, "senate must have at least one member")?;
        check(self.house_size >= 1, "house must have at least one member")?;
        check(
            1 <= self.senate_quota && self.senate_quota <= self.senate_size,
            "senate quota must lie in [1, senate size]",
        )?;
        check(
            1 <= self.house_quota && self.house_quota <= self.house_size,
            "house quota must lie in [1, house size]",
        )?;
        check(
            self.senate_quota <= self.senate_override && self.senate_override <= self.senate_size,
            "senate override must lie in [senate quota, senate size]",
        )?;
        check(
            self.house_quota <= self.house_override && self.house_override <= self.house_size,
            "house override must lie in [house quota, house size]",
        )
    }

    /// Replaces the signature-track quotas, raising the override quotas where
    /// needed so an override never needs fewer votes than a signed bill.
    pub fn with_sign_quotas(mut self, senate_quota: u64, house_quota: u64) -> Self {
        self.senate_quota = senate_quota;
        self.house_quota = house_quota;
        self.senate_override = self.senate_override.max(senate_quota);
        self.house_override = self.house_override.max(house_quota);
        self
    }

    /// Whether the vice president's vote completes a senate tie on the signature track.
    pub fn vp_breaks_tie(&self) -> bool {
        self.has_vp && self.senate_quota - 1 == self.senate_size / 2
    }

    pub fn total_players(&self) -> u64 {
        self.senate_size
            + self.house_size
            + u64::from(self.has_president)
            + u64::from(self.has_vp)
    }

    pub fn has_class(&self, c: PlayerClass) -> bool {
        match c {
            PlayerClass::President => self.has_president,
            PlayerClass::VicePresident => self.has_vp,
            PlayerClass::Senator | PlayerClass::Representative => true,
        }
    }

    pub fn classes(&self) -> Vec<PlayerClass> {
        PlayerClass::ALL
            .into_iter()
            .filter(|c| self.has_class(*c))
            .collect()
    }

    /// The passage rule, stated on head counts.
    pub fn passes(&self, president: bool, vp: bool, senators: u64, reps: u64) -> bool {
        let signed = self.has_president
            && president
            && reps >= self.house_quota
            && (senators >= self.senate_quota
                || (self.has_vp
                    && vp
                    && senators + 1 == self.senate_quota
                    && self.senate_quota - 1 == self.senate_size / 2));
        let overridden = senators >= self.senate_override && reps >= self.house_override;
        signed || overridden
    }
}

/// One family of coalitions in which a player of `class` is critical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub label: &'static str,
    pub class: PlayerClass,
    pub template: CoalitionTemplate,
}

/// Builds the template row list. Rows of one class describe pairwise
/// disjoint coalition families whose union is every coalition in which that
/// class is critical. Fixed counts include the critical player.
pub fn table_rows(spec: &UsSpec) -> Result<Vec<TableRow>, UsModelError> {
    spec.validate()?;
    let ms = spec.senate_size;
    let mr = spec.house_size;
    let (qs, qr, os, or) = (
        spec.senate_quota,
        spec.house_quota,
        spec.senate_override,
        spec.house_override,
    );
    let tie = spec.vp_breaks_tie();

    let mut rows = Vec::new();
    let mut push = |label, class, fixed: u64, pools: &[(u64, u64, u64)]| {
        // Empty pick ranges describe empty families.
        let pools: Option<Vec<_>> = pools
            .iter()
            .map(|&(n, lo, hi)| PoolConstraint::new(n, lo, hi).ok())
            .collect();
        if let Some(pools) = pools {
            rows.push(TableRow {
                label,
                class,
                template: CoalitionTemplate::new(fixed, pools),
            });
        }
    };
    use PlayerClass::*;

    if spec.has_president {
        // Senators the signature track needs when the vice president is present.
        let qs_with_vp = if tie { qs - 1 } else { qs };
        let below_override = os.checked_sub(1);

        // President: signature track holds, override track does not.
        if let Some(top) = below_override {
            push("P1", President, 1, &[(ms, qs, top), (mr, qr, mr)]);
        }
        if or >= 1 {
            push("P3", President, 1, &[(ms, os, ms), (mr, qr, or - 1)]);
        }
        if spec.has_vp {
            if let Some(top) = below_override {
                push("P2", President, 2, &[(ms, qs_with_vp, top), (mr, qr, mr)]);
            }
            if or >= 1 {
                push("P4", President, 2, &[(ms, os, ms), (mr, qr, or - 1)]);
            }
        }

        // Senator on the signature track: the senate head count sits exactly at
        // its threshold, which is one lower when the vice president breaks a tie.
        if tie {
            push("S1", Senator, 2, &[(ms, qs - 1, qs - 1), (mr, qr, mr)]);
        } else {
            push("S1", Senator, 2, &[(ms - 1, qs - 1, qs - 1), (mr, qr, mr)]);
            if spec.has_vp {
                push("S1", Senator, 3, &[(ms - 1, qs - 1, qs - 1), (mr, qr, mr)]);
            }
        }

        // Representative on the signature track: house head count exactly q_r.
        if tie {
            push("R1", Representative, 2, &[(mr - 1, qr - 1, qr - 1), (ms + 1, qs, ms + 1)]);
        } else {
            push("R1", Representative, 2, &[(mr - 1, qr - 1, qr - 1), (ms, qs, ms)]);
            if spec.has_vp {
                push("R1", Representative, 3, &[(mr - 1, qr - 1, qr - 1), (ms, qs, ms)]);
            }
        }

        if tie {
            push("V", VicePresident, 2, &[(ms, qs - 1, qs - 1), (mr, qr, mr)]);
        }
    }

    // Override track without the president.
    push("S2", Senator, 1, &[(ms - 1, os - 1, os - 1), (mr, or, mr)]);
    if spec.has_vp {
        push("S3", Senator, 2, &[(ms - 1, os - 1, os - 1), (mr, or, mr)]);
        push("R2", Representative, 1, &[(mr - 1, or - 1, or - 1), (ms, os, os)]);
        push("R3", Representative, 1, &[(mr - 1, or - 1, or - 1), (ms + 1, os + 1, ms + 1)]);
    } else {
        push("R2", Representative, 1, &[(mr - 1, or - 1, or - 1), (ms, os, ms)]);
    }

    Ok(rows)
}

/// Critical numbers of one player of class `c`.
pub fn class_critical_vector(spec: &UsSpec, c: PlayerClass) -> Result<CountVector, UsModelError> {
    if !spec.has_class(c) {
        return Err(UsModelError::AbsentClass(c));
    }
    let parts: Vec<CountVector> = table_rows(spec)?
        .iter()
        .filter(|row| row.class == c)
        .map(|row| template_counts(&row.template))
        .collect();
    Ok(sum_counts(&parts))
}

pub fn class_power(
    spec: &UsSpec,
    c: PlayerClass,
    w: &WeightingVector,
) -> Result<Ratio, UsModelError> {
    if w.len() as u64 != spec.total_players() {
        return Err(SemivalueError::SizeMismatch {
            expected: spec.total_players() as usize,
            actual: w.len(),
        }
        .into());
    }
    Ok(w.evaluate(&class_critical_vector(spec, c)?)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankEntry {
    pub class: PlayerClass,
    pub value: Ratio,
    /// Equal in value to the entry before it.
    pub tied_with_previous: bool,
}

/// Classes ordered by decreasing index value.
pub fn ranking(spec: &UsSpec, w: &WeightingVector) -> Result<Vec<RankEntry>, UsModelError> {
    let mut values = spec
        .classes()
        .into_iter()
        .map(|c| Ok((c, class_power(spec, c, w)?)))
        .collect::<Result<Vec<_>, UsModelError>>()?;
    // stable sort keeps the declaration order among ties
    values.sort_by(|a, b| b.1.cmp(&a.1));
    let mut out: Vec<RankEntry> = Vec::with_capacity(values.len());
    for (class, value) in values {
        let tied_with_previous = out.last().is_some_and(|prev| prev.value == value);
        out.push(RankEntry {
            class,
            value,
            tied_with_previous,
        });
    }
    Ok(out)
}

/// `c_v(k).cmp(c_r(k))` for every `k` between the smallest and largest size
/// where either is nonzero.
pub fn vr_comparison(spec: &UsSpec) -> Result<Vec<(u64, Ordering)>, UsModelError> {
    let cv = class_critical_vector(spec, PlayerClass::VicePresident)?;
    let cr = class_critical_vector(spec, PlayerClass::Representative)?;
    let bounds: Vec<(u64, u64)> = [cv.bounds(), cr.bounds()].into_iter().flatten().collect();
    let (Some(lo), Some(hi)) = (
        bounds.iter().map(|b| b.0).min(),
        bounds.iter().map(|b| b.1).max(),
    ) else {
        return Ok(Vec::new());
    };
    Ok((lo..=hi).map(|k| (k, cv.get(k).cmp(&cr.get(k)))).collect())
}

/// Collapses a sign table into maximal runs `(first_k, last_k, sign)`.
pub fn sign_runs(table: &[(u64, Ordering)]) -> Vec<(u64, u64, Ordering)> {
    let mut runs: Vec<(u64, u64, Ordering)> = Vec::new();
    for &(k, o) in table {
        match runs.last_mut() {
            Some(last) if last.2 == o && last.1 + 1 == k => last.1 = k,
            _ => runs.push((k, k, o)),
        }
    }
    runs
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub senate_quota: u64,
    /// Senator relative to representative.
    pub senator_vs_rep: Relation,
    /// President relative to senator.
    pub president_vs_senator: Relation,
}

/// Weak-desirability verdicts as the senate signature quota varies. Override
/// quotas are raised to the signature quota where necessary.
pub fn supermajority_scan(spec: &UsSpec, quotas: &[u64]) -> Result<Vec<ScanRow>, UsModelError> {
    let min = majority_quota(spec.senate_size);
    let max = spec.senate_size;
    quotas
        .iter()
        .map(|&q| {
            if q < min || q > max {
                return Err(UsModelError::QuotaOutOfRange { quota: q, min, max });
            }
            let s = spec.with_sign_quotas(q, spec.house_quota);
            let cs = class_critical_vector(&s, PlayerClass::Senator)?;
            let cr = class_critical_vector(&s, PlayerClass::Representative)?;
            let president_vs_senator = if s.has_president {
                weak_desirability(&class_critical_vector(&s, PlayerClass::President)?, &cs)
            } else {
                Relation::Equal
            };
            Ok(ScanRow {
                senate_quota: q,
                senator_vs_rep: weak_desirability(&cs, &cr),
                president_vs_senator,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_comb::binomial;

    fn mini() -> UsSpec {
        UsSpec {
            senate_size: 4,
            house_size: 5,
            senate_quota: 3,
            house_quota: 3,
            senate_override: 4,
            house_override: 4,
            has_president: true,
            has_vp: true,
        }
    }

    #[test]
    fn default_spec_is_valid() {
        UsSpec::default().validate().unwrap();
        assert_eq!(UsSpec::default().total_players(), 537);
        assert!(UsSpec::default().vp_breaks_tie());
    }

    #[test]
    fn invalid_specs_rejected() {
        let s = UsSpec {
            senate_override: 50,
            ..UsSpec::default()
        };
        assert!(s.validate().is_err());
        let s = UsSpec {
            house_quota: 0,
            ..UsSpec::default()
        };
        assert!(s.validate().is_err());
    }

    #[test]
    fn endpoint_values() {
        let spec = UsSpec::default();
        assert_eq!(
            class_critical_vector(&spec, PlayerClass::Senator).unwrap().get(503),
            binomial(99, 66)
        );
        assert_eq!(
            class_critical_vector(&spec, PlayerClass::President).unwrap().get(503),
            binomial(100, 66)
        );
        assert_eq!(
            class_critical_vector(&spec, PlayerClass::Representative)
                .unwrap()
                .get(357),
            binomial(434, 289) * binomial(100, 67)
        );
        assert_eq!(
            class_critical_vector(&spec, PlayerClass::VicePresident)
                .unwrap()
                .get(391),
            // c_v(k) = C(100,50) C(435, k-52) at k = 391
            binomial(100, 50) * binomial(435, 339)
        );
    }

    #[test]
    fn vice_president_closed_form() {
        let spec = UsSpec::default();
        let cv = class_critical_vector(&spec, PlayerClass::VicePresident).unwrap();
        assert_eq!(cv.bounds(), Some((270, 487)));
        for k in 270..=487u64 {
            assert_eq!(cv.get(k), binomial(100, 50) * binomial(435, k as i64 - 52));
        }
    }

    #[test]
    fn absent_class_is_an_error() {
        let mut spec = mini();
        spec.has_vp = false;
        assert_eq!(
            class_critical_vector(&spec, PlayerClass::VicePresident),
            Err(UsModelError::AbsentClass(PlayerClass::VicePresident))
        );
    }

    #[test]
    fn class_names_parse() {
        assert_eq!("vp".parse::<PlayerClass>().unwrap(), PlayerClass::VicePresident);
        assert_eq!(
            "Representative".parse::<PlayerClass>().unwrap(),
            PlayerClass::Representative
        );
        assert!("governor".parse::<PlayerClass>().is_err());
    }

    #[test]
    fn sign_runs_collapse() {
        let t = vec![
            (1, Ordering::Less),
            (2, Ordering::Less),
            (3, Ordering::Greater),
            (4, Ordering::Less),
        ];
        assert_eq!(
            sign_runs(&t),
            vec![
                (1, 2, Ordering::Less),
                (3, 3, Ordering::Greater),
                (4, 4, Ordering::Less)
            ]
        );
    }

    #[test]
    fn scan_rejects_quota_below_majority() {
        assert!(matches!(
            supermajority_scan(&UsSpec::default(), &[50]),
            Err(UsModelError::QuotaOutOfRange { .. })
        ));
    }

    #[test]
    fn power_requires_matching_size() {
        let w = WeightingVector::banzhaf(10).unwrap();
        assert!(class_power(&UsSpec::default(), PlayerClass::Senator, &w).is_err());
        let w = WeightingVector::banzhaf(11).unwrap();
        let v = class_power(&mini(), PlayerClass::Senator, &w).unwrap();
        assert!(v > Ratio::from_integer(0.into()));
    }
}

use std::cmp::Ordering;

use proptest::prelude::*;
use votepower::exact_comb::{
    certify_comparison, critical_products, first_product_exceeds, CertOutcome, House,
};
use votepower::legislature::{
    classify_bicameral, compare_members, crossover_sizes, majority_quota, member_critical_vector,
    CaseClass,
};
use votepower::{Dominance, MulticamSpec, Side};

/// Every `(small, large)` pair with `1 < q < m` and `small.size < large.size <= max`.
fn quota_grid(max: u64) -> impl Iterator<Item = (House, House)> {
    (3..=max).flat_map(move |mr| {
        (3..mr).flat_map(move |ms| {
            (2..ms).flat_map(move |qs| {
                (2..mr).map(move |qr| (House::new(ms, qs), House::new(mr, qr)))
            })
        })
    })
}

#[test]
fn certificate_never_contradicts_direct_evaluation() {
    let mut certified = 0usize;
    for (s, r) in quota_grid(20) {
        for (a, b) in [(s, r), (r, s)] {
            for (k, v) in certify_comparison(a, b).unwrap() {
                let (left, right) = critical_products(a, b, k);
                match v.outcome {
                    CertOutcome::CertifiedGreater => {
                        assert!(left > right, "{a:?} {b:?} k={k} {v:?}");
                        certified += 1;
                    }
                    CertOutcome::CertifiedEqual => assert_eq!(left, right, "{a:?} {b:?} k={k}"),
                    CertOutcome::NotCertified => {}
                }
            }
        }
    }
    assert!(certified > 10_000);
}

#[test]
fn direct_comparison_crosses_at_most_once() {
    for (s, r) in quota_grid(20) {
        let lo = s.quota + r.quota;
        let hi = (s.quota + r.size).min(r.quota + s.size);
        let signs: Vec<bool> = (lo..=hi).map(|k| first_product_exceeds(s, r, k)).collect();
        assert!(
            signs.windows(2).all(|w| !w[0] || w[1]),
            "{s:?} {r:?}: {signs:?}"
        );
    }
}

#[test]
fn two_chamber_support_is_the_lemma_range() {
    for m1 in 1..=12u64 {
        for m2 in 1..=12u64 {
            for q1 in 1..=m1 {
                for q2 in 1..=m2 {
                    let spec = MulticamSpec::from_pairs(&[(m1, q1), (m2, q2)]).unwrap();
                    let c1 = member_critical_vector(&spec, "c1").unwrap();
                    let c2 = member_critical_vector(&spec, "c2").unwrap();
                    assert_eq!(c1.bounds(), Some((q1 + q2, q1 + m2)));
                    assert_eq!(c2.bounds(), Some((q1 + q2, q2 + m1)));
                    assert!(c1.is_contiguous() && c2.is_contiguous());
                }
            }
        }
    }
}

#[test]
fn smaller_majority_chamber_support_contains_larger() {
    for mr in 2..=40u64 {
        for ms in 1..mr {
            let spec = MulticamSpec::from_pairs(&[(ms, majority_quota(ms)), (mr, majority_quota(mr))])
                .unwrap();
            let (s_lo, s_hi) = member_critical_vector(&spec, "c1").unwrap().bounds().unwrap();
            let (r_lo, r_hi) = member_critical_vector(&spec, "c2").unwrap().bounds().unwrap();
            assert!(s_lo <= r_lo && r_hi <= s_hi, "ms={ms} mr={mr}");
        }
    }
}

#[test]
fn parity_cases_give_strict_dominance_of_smaller_chamber() {
    let mut checked = 0;
    for mr in 2..=40u64 {
        for ms in 1..mr {
            if !classify_bicameral(ms, mr).unwrap().small_always_dominates() {
                continue;
            }
            let spec = MulticamSpec::from_pairs(&[(ms, majority_quota(ms)), (mr, majority_quota(mr))])
                .unwrap();
            let v = compare_members(&spec, "c1", "c2").unwrap();
            assert_eq!(
                (v.relation, v.leader),
                (Dominance::Strict, Some(Side::First)),
                "ms={ms} mr={mr}"
            );
            checked += 1;
        }
    }
    assert!(checked > 600);
}

#[test]
fn larger_quota_share_in_smaller_chamber_gives_dominance() {
    for mr in 2..=20u64 {
        for ms in 1..mr {
            for qs in 1..=ms {
                for qr in 1..=mr {
                    if qs * mr <= qr * ms || mr - qr < ms - qs {
                        continue;
                    }
                    let spec = MulticamSpec::from_pairs(&[(ms, qs), (mr, qr)]).unwrap();
                    let v = compare_members(&spec, "c1", "c2").unwrap();
                    assert_eq!(
                        (v.relation, v.leader),
                        (Dominance::Strict, Some(Side::First)),
                        "({ms},{qs}) vs ({mr},{qr})"
                    );
                }
            }
        }
    }
}

#[test]
fn exceptional_case_shape() {
    for ms in (1..=39u64).step_by(2) {
        for mr in ((ms + 1)..=(2 * ms).min(40)).filter(|m| m % 2 == 0) {
            let (qs, qr) = (majority_quota(ms), majority_quota(mr));
            let cross = crossover_sizes(ms, qs, mr, qr).unwrap();
            let spec = MulticamSpec::from_pairs(&[(ms, qs), (mr, qr)]).unwrap();
            let large = member_critical_vector(&spec, "c2").unwrap();
            let small = member_critical_vector(&spec, "c1").unwrap();
            let (lo, hi) = large.bounds().unwrap();
            let prefix: Vec<u64> = (lo..lo + cross.len() as u64).collect();
            assert_eq!(cross.iter().copied().collect::<Vec<_>>(), prefix, "ms={ms} mr={mr}");

            let whole_range = cross.len() as u64 == hi - lo + 1;
            let leading_tie_only = cross.is_empty()
                && small.get(lo) == large.get(lo)
                && (lo + 1..=small.bounds().unwrap().1).all(|k| small.get(k) > large.get(k));
            if ms == 1 {
                // (1, 2) is both the adjacent and the doubled pair; the tie wins.
                assert!(leading_tie_only && !whole_range);
                continue;
            }
            assert_eq!(whole_range, mr == ms + 1, "ms={ms} mr={mr}");
            assert_eq!(leading_tie_only, mr == 2 * ms, "ms={ms} mr={mr}");
        }
    }
}

#[test]
fn middle_gap_example_sign_table() {
    let spec = MulticamSpec::from_pairs(&[(101, 51), (150, 76)]).unwrap();
    let v = compare_members(&spec, "c1", "c2").unwrap();
    assert_eq!(v.relation, Dominance::Crossover);
    assert_eq!(v.leader, Some(Side::First));
    assert_eq!(v.crossover_sizes.iter().copied().collect::<Vec<_>>(), vec![127, 128]);
    assert!(v
        .per_k
        .iter()
        .filter(|(k, _)| *k >= 129)
        .all(|(_, o)| *o == Ordering::Greater));
    assert_eq!(
        classify_bicameral(101, 150).unwrap(),
        CaseClass::SmallOddLargeEvenMiddle
    );
}

#[test]
fn three_chamber_comparison_mirrors_pairwise_regime() {
    for (a, b, c) in [(3u64, 5u64, 7u64), (3, 4, 9), (3, 6, 5), (5, 8, 3)] {
        let spec = MulticamSpec::from_pairs(&[
            (a, majority_quota(a)),
            (b, majority_quota(b)),
            (c, majority_quota(c)),
        ])
        .unwrap();
        let three = compare_members(&spec, "c1", "c2").unwrap();
        let pair =
            MulticamSpec::from_pairs(&[(a, majority_quota(a)), (b, majority_quota(b))]).unwrap();
        let two = compare_members(&pair, "c1", "c2").unwrap();
        assert_eq!((three.relation, three.leader), (two.relation, two.leader), "{a} {b} {c}");
    }
}

proptest! {
    #[test]
    fn comparison_is_antisymmetric(
        m1 in 1u64..30, m2 in 1u64..30, m3 in 0u64..6,
        f1 in 0.0f64..1.0, f2 in 0.0f64..1.0,
    ) {
        let q = |m: u64, f: f64| ((m as f64 * f) as u64).clamp(1, m);
        let mut pairs = vec![(m1, q(m1, f1)), (m2, q(m2, f2))];
        if m3 > 0 {
            pairs.push((m3, majority_quota(m3)));
        }
        let spec = MulticamSpec::from_pairs(&pairs).unwrap();
        let ab = compare_members(&spec, "c1", "c2").unwrap();
        let ba = compare_members(&spec, "c2", "c1").unwrap();
        prop_assert_eq!(ab.swapped(), ba);
    }
}

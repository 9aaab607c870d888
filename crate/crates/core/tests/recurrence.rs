mod common;

use std::collections::BTreeMap;

use dcgf::recurrence::eval_recurrence_memo;
use dcgf::{eval_linear, eval_recurrence, family_recurrence, oracle_bit_stats, DCRecurrence, FamilySpec, LinearRecurrence, Rule};
use num_bigint::BigInt;
use proptest::prelude::*;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

prop_compose! {
    fn random_rule()(own in -3i64..=3, constant in -3i64..=3, lagged in prop::collection::vec(-2i64..=2, 0..3), aux in -1i64..=1) -> Rule {
        Rule::affine(own, constant).with_lagged(ints(&lagged)).with_aux(aux)
    }
}

prop_compose! {
    fn random_recurrence()(a0 in -5i64..=5, even in random_rule(), odd in random_rule(), tail in prop::collection::vec(-2i64..=2, 1..3)) -> DCRecurrence {
        DCRecurrence::new(BTreeMap::from([(0, BigInt::from(a0))]), even.starting_at(1), odd)
            .with_aux(LinearRecurrence::reciprocal_of_tail(&tail).unwrap())
    }
}

proptest! {
    #[test]
    fn memo_agrees_with_bottom_up(rec in random_recurrence(), order in 1usize..300) {
        prop_assert_eq!(eval_recurrence_memo(&rec, order).unwrap(), eval_recurrence(&rec, order).unwrap());
    }

    #[test]
    fn prefix_stable(rec in random_recurrence(), short in 1usize..100, extra in 0usize..100) {
        let long = eval_recurrence(&rec, short + extra).unwrap();
        prop_assert_eq!(eval_recurrence(&rec, short).unwrap(), long[..short].to_vec());
    }

    #[test]
    fn reciprocal_of_tail_matches_long_division(tail in prop::collection::vec(-3i64..=3, 1..4), order in 1usize..40) {
        // b = 1 + Q b, expanded term by term
        let mut b: Vec<BigInt> = Vec::new();
        for n in 0..order {
            let mut v = BigInt::from(if n == 0 { 1 } else { 0 });
            for (i, &ci) in tail.iter().enumerate() {
                if n > i {
                    v += BigInt::from(ci) * &b[n - i - 1];
                }
            }
            b.push(v);
        }
        prop_assert_eq!(eval_linear(&LinearRecurrence::reciprocal_of_tail(&tail).unwrap(), order), b);
    }

    #[test]
    fn bit_stats(n in 1u64..u64::MAX) {
        let s = oracle_bit_stats(n);
        prop_assert_eq!(s.e0 + s.e1, s.len);
        prop_assert_eq!(s.e1, n.count_ones());
        prop_assert_eq!(s.v2().unwrap(), common::v2(n));
        prop_assert_eq!(s.e0, common::e0(n));
        prop_assert!(n >> (s.len - 1) == 1);
    }
}

#[test]
fn stern_recurrence() {
    let rec = family_recurrence(&FamilySpec::t5(1, vec![1])).unwrap();
    let a = eval_recurrence(&rec, 16).unwrap();
    // a(n) = s(n+1) for Stern's diatomic s
    assert_eq!(a, ints(&[1, 1, 2, 1, 3, 2, 3, 1, 4, 3, 5, 2, 5, 3, 4, 1]));
}

#[test]
fn zero_has_no_valuation() {
    assert!(oracle_bit_stats(0).v2().is_err());
    assert_eq!(oracle_bit_stats(0).len, 0);
}

#[test]
fn coverage_errors() {
    let gap = DCRecurrence::new(BTreeMap::new(), Rule::scaled(1).starting_at(1), Rule::scaled(1));
    assert!(eval_recurrence(&gap, 4).is_err());
    let overlap = DCRecurrence::new(BTreeMap::from([(0, BigInt::from(0)), (2, BigInt::from(1))]), Rule::scaled(1).starting_at(1), Rule::scaled(1));
    assert!(eval_recurrence(&overlap, 4).is_err());
    let no_aux = DCRecurrence::new(BTreeMap::from([(0, BigInt::from(0))]), Rule::scaled(1).starting_at(1).with_aux(1), Rule::scaled(1));
    assert!(eval_recurrence(&no_aux, 4).is_err());
}

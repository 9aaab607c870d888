mod common;

use dcgf::tworational::ones_count_rep;
use dcgf::{eval_linear_rep, eval_recurrence, family_recurrence, rep_for_affine, FamilySpec};
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn affine_rep_matches_recurrence(
        alpha in (-4i64..=4).prop_filter("nonzero", |a| *a != 0),
        c in -5i64..=5,
        d in -5i64..=5,
        n in 0u64..(1 << 12),
    ) {
        let rep = rep_for_affine(alpha, c, d).unwrap();
        prop_assert_eq!(eval_linear_rep(&rep, n), common::affine_oracle(alpha, c, d, n));
    }

    #[test]
    fn ones_count(n in any::<u64>()) {
        prop_assert_eq!(eval_linear_rep(&ones_count_rep(), n), BigInt::from(n.count_ones()));
    }

    #[test]
    fn digit_form_agrees(alpha in (-3i64..=3).prop_filter("nonzero", |a| *a != 0), c in -3i64..=3, d in -3i64..=3, n in 1u64..10_000) {
        let rep = rep_for_affine(alpha, c, d).unwrap();
        let digits: Vec<u8> = format!("{n:b}").bytes().map(|b| b - b'0').collect();
        prop_assert_eq!(rep.eval_digits(&digits).unwrap(), rep.eval(n));
    }
}

#[test]
fn full_range_against_family_recurrence() {
    for (alpha, c, d) in [(1, 0, 1), (2, 1, 1), (-1, 1, 0), (3, 0, 1), (4, -2, 3)] {
        let rec = eval_recurrence(&family_recurrence(&FamilySpec::t4(alpha, c, d)).unwrap(), 4096).unwrap();
        let rep = rep_for_affine(alpha, c, d).unwrap();
        for n in 0..4096u64 {
            assert_eq!(eval_linear_rep(&rep, n), rec[n as usize], "({alpha},{c},{d}) n={n}");
        }
    }
}

mod common;

use proptest::prelude::*;
use rvq::components::{canonical_rep, hyperelliptic_test};
use rvq::double_cover::cover_stratum;
use rvq::group_analysis::{modp_closure, sp_order, ModpMatrix};
use rvq::homology::{conjugate_form, intersection_form, kz_plus};
use rvq::induction::{apply_arrow, LocalInverse, MoveKind, ReverseResolver};
use rvq::intmat::IntMatrix;
use rvq::strata::{orbit_signature, stratum_signature};
use rvq::GeneralizedPermutation;

/// Arbitrary two-row arrangement of `d` letters, each used twice.
fn arb_gp() -> impl Strategy<Value = GeneralizedPermutation> {
    (2usize..7)
        .prop_flat_map(|d| (Just((0..2 * d).map(|i| i / 2).collect::<Vec<_>>()).prop_shuffle(), 1..2 * d))
        .prop_map(|(tokens, ell)| {
            let names: Vec<String> = tokens.iter().map(|t| format!("x{t}")).collect();
            GeneralizedPermutation::from_rows(&names[..ell], &names[ell..]).unwrap()
        })
}

fn arb_irreducible() -> impl Strategy<Value = GeneralizedPermutation> {
    arb_gp().prop_filter("irreducible with the convention", |g| g.is_irreducible() && g.satisfies_convention())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn text_round_trip(g in arb_gp()) {
        let again: GeneralizedPermutation = g.to_string().parse().unwrap();
        prop_assert_eq!(again.to_string(), g.to_string());
        prop_assert_eq!(again.key(), g.key());
    }

    #[test]
    fn reduced_form_is_a_relabeling_invariant(g in arb_gp()) {
        let (r, _) = g.reduced_form();
        prop_assert_eq!(r.reduced_form().0.to_string(), r.to_string());
        prop_assert_eq!(r.reduced_key(), g.reduced_key());
        prop_assert_eq!(r.is_irreducible(), g.is_irreducible());
    }

    #[test]
    fn arrows_stay_in_the_class_and_invert(g in arb_irreducible()) {
        for k in MoveKind::BOTH {
            if let Ok(a) = apply_arrow(&g, k) {
                prop_assert!(a.target.is_irreducible());
                prop_assert!(a.target.satisfies_convention());
                let back = LocalInverse.reverse(&a.target, k).unwrap();
                prop_assert_eq!(back.source.to_string(), g.to_string());
                let b = kz_plus(&a);
                prop_assert_eq!(conjugate_form(&b, &intersection_form(&g).matrix), intersection_form(&a.target).matrix);
            }
        }
    }

    #[test]
    fn stratum_is_consistent(g in arb_irreducible()) {
        let s = stratum_signature(&g).unwrap();
        prop_assert_eq!(s.orders.iter().sum::<i64>(), 4 * s.genus - 4);
        prop_assert_eq!(intersection_form(&g).rank() as i64, 2 * s.genus);
        prop_assert!(intersection_form(&g).matrix.is_antisymmetric());
        let c = cover_stratum(&s);
        prop_assert_eq!(2 * c.genus - 2, 4 * s.genus - 4 + s.odd_count() as i64);
    }

    #[test]
    fn stratum_is_relabeling_invariant(g in arb_irreducible()) {
        prop_assert_eq!(orbit_signature(&g).unwrap(), orbit_signature(&g.reduced_form().0).unwrap());
    }

    #[test]
    fn symmetric_forms_are_hyperelliptic(s in 1i64..6, r in 1i64..6) {
        let g = canonical_rep(&format!("sigma_hyp({s},{r})")).unwrap();
        prop_assert!(hyperelliptic_test(&g).unwrap());
    }

    #[test]
    fn closure_is_order_independent_and_monotone(picks in proptest::collection::vec(0usize..4, 1..5)) {
        let m = |r: &[Vec<i64>]| ModpMatrix::from_int(&IntMatrix::from_rows(r), 3).unwrap();
        let pool = [
            m(&[vec![1, 1], vec![0, 1]]),
            m(&[vec![1, 0], vec![1, 1]]),
            m(&[vec![2, 0], vec![0, 2]]),
            m(&[vec![0, 1], vec![2, 0]]),
        ];
        let form = m(&[vec![0, 1], vec![2, 0]]);
        let gens: Vec<ModpMatrix> = picks.iter().map(|&i| pool[i].clone()).collect();
        let full = modp_closure(&gens, &form, 1000).unwrap();
        let mut rev = gens.clone();
        rev.reverse();
        prop_assert_eq!(modp_closure(&rev, &form, 1000).unwrap().order, full.order);
        prop_assert_eq!(sp_order(1, 3).unwrap() % full.order, 0);
        let fewer = modp_closure(&gens[..gens.len() - 1], &form, 1000).unwrap();
        prop_assert!(fewer.order <= full.order);
    }
}

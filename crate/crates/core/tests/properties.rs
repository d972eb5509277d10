mod common;

use common::*;
use proptest::prelude::*;

use pham_brieskorn::arith::{self, GammaClass, SearchOrder};
use pham_brieskorn::classify::{self, Status};
use pham_brieskorn::symb;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn order_laws(chain in order_chain()) {
        prop_order_laws(chain)?;
    }

    #[test]
    fn cotype_scaling(input in (small_tuple(), 1u64..=6)) {
        prop_cotype_scaling(input)?;
    }

    #[test]
    fn contraction_parity(g in graph()) {
        prop_parity(g)?;
    }

    #[test]
    fn k_squared_steps(g in graph()) {
        prop_k_squared_step(g)?;
    }

    #[test]
    fn disjoint_contractions_commute(g in graph()) {
        prop_disjoint_commute(g)?;
    }

    #[test]
    fn reduce_sound(input in (ring(), polynomial(3), polynomial(3))) {
        prop_reduce_sound(input)?;
    }

    #[test]
    fn leibniz(input in (ring(), derivation(3), polynomial(3), polynomial(3))) {
        prop_leibniz(input)?;
    }

    #[test]
    fn classify_matches_gamma(v in small_tuple()) {
        let s = tuple(&v);
        let verdict = classify::classify(&s);
        let outside = arith::gamma_class(&s) == GammaClass::NotInGamma;
        prop_assert_eq!(verdict.status == Status::NotRigid, outside);
        if v.len() <= 4 {
            prop_assert_ne!(verdict.status, Status::ConjecturallyRigid);
        }
        if verdict.status == Status::NotRigid {
            let w = verdict.witness.as_ref().unwrap();
            prop_assert!(w.certify().unwrap().is_certified());
        }
    }

    #[test]
    fn witnesses_are_homogeneous(v in prop::collection::vec(2u64..=9, 1..=3)) {
        let mut t = vec![1u64];
        t.extend(v);
        t.resize(t.len().max(3), 4);
        let w = symb::witness_unit_exponent(&tuple(&t)).unwrap();
        let h = symb::homogeneous_degree(&w.derivation, &w.ring.weights);
        prop_assert!(matches!(h, symb::Homogeneity::Degree(_)));
    }
}

#[test]
fn enumeration_is_order_independent() {
    let up = arith::enumerate_gamma_minus_with(SearchOrder::Ascending);
    let down = arith::enumerate_gamma_minus_with(SearchOrder::Descending);
    assert_eq!(up, down);
}

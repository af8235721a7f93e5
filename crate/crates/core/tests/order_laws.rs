use std::cmp::Ordering;
use std::sync::OnceLock;

use ot_core::harness::{enumerate, oracle_cnf_compare, oracle_veblen_compare, EnumSpec};
use ot_core::hull::validate_ot;
use ot_core::order::{cmp, lt_under, Ctx};
use ot_core::term::arith::{add, normalize_sum, phi};
use ot_core::textio::{from_structured, parse, print, to_structured};
use ot_core::Term;
use proptest::prelude::*;

fn corpus() -> &'static [Term] {
    static C: OnceLock<Vec<Term>> = OnceLock::new();
    C.get_or_init(|| enumerate(&Ctx::default(), &EnumSpec::new(5)).unwrap().terms)
}

fn from_corpus() -> impl Strategy<Value = Term> {
    (0..corpus().len()).prop_map(|i| corpus()[i].clone())
}

/// Terms of the `{0, +, φ}` fragment, built through the normalizing constructors.
fn veblen_term() -> impl Strategy<Value = Term> {
    let leaf = (0u64..4).prop_map(Term::nat);
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| phi(&Ctx::default(), &a, &b).unwrap()),
            prop::collection::vec(inner, 2..4).prop_map(|ps| normalize_sum(&Ctx::default(), &ps).unwrap()),
        ]
    })
}

fn cnf_term() -> impl Strategy<Value = Term> {
    let leaf = (0u64..4).prop_map(Term::nat);
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|b| phi(&Ctx::default(), &Term::Zero, &b).unwrap()),
            prop::collection::vec(inner, 2..4).prop_map(|ps| normalize_sum(&Ctx::default(), &ps).unwrap()),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn antisymmetric(x in from_corpus(), y in from_corpus()) {
        let c = Ctx::default();
        let (a, b) = (cmp(&c, &x, &y).unwrap(), cmp(&c, &y, &x).unwrap());
        prop_assert_eq!(a, b.reverse());
        prop_assert_eq!(a == Ordering::Equal, x == y);
    }

    #[test]
    fn transitive(x in from_corpus(), y in from_corpus(), z in from_corpus()) {
        let c = Ctx::default();
        let mut v = [x, y, z];
        v.sort_by(|p, q| cmp(&c, p, q).unwrap());
        prop_assert_ne!(cmp(&c, &v[0], &v[2]).unwrap(), Ordering::Greater);
    }

    #[test]
    fn text_round_trip(x in from_corpus()) {
        prop_assert_eq!(parse(&print(&x)).unwrap(), x);
    }

    #[test]
    fn structured_round_trip(x in from_corpus()) {
        prop_assert_eq!(from_structured(&to_structured(&x)).unwrap(), x);
    }

    #[test]
    fn veblen_oracle_agrees(x in veblen_term(), y in veblen_term()) {
        let c = Ctx::default();
        prop_assert_eq!(cmp(&c, &x, &y).unwrap(), oracle_veblen_compare(&x, &y).unwrap());
    }

    #[test]
    fn cnf_oracle_agrees(x in cnf_term(), y in cnf_term()) {
        let c = Ctx::default();
        prop_assert_eq!(cmp(&c, &x, &y).unwrap(), oracle_cnf_compare(&x, &y).unwrap());
    }

    #[test]
    fn constructed_terms_validate(x in veblen_term()) {
        prop_assert!(validate_ot(&Ctx::default(), &x).valid);
    }

    #[test]
    fn addition_associates(x in veblen_term(), y in veblen_term(), z in veblen_term()) {
        let c = Ctx::default();
        let l = add(&c, &add(&c, &x, &y).unwrap(), &z).unwrap();
        let r = add(&c, &x, &add(&c, &y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn addition_is_monotone_on_the_right(x in veblen_term(), y in veblen_term(), z in veblen_term()) {
        let c = Ctx::default();
        let (xy, xz) = (add(&c, &x, &y).unwrap(), add(&c, &x, &z).unwrap());
        if cmp(&c, &y, &z).unwrap() == Ordering::Less {
            prop_assert_eq!(cmp(&c, &xy, &xz).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn normalize_sum_is_idempotent(ps in prop::collection::vec(from_corpus(), 0..4)) {
        let c = Ctx::default();
        let once = normalize_sum(&c, &ps).unwrap();
        prop_assert_eq!(normalize_sum(&c, std::slice::from_ref(&once)).unwrap(), once);
    }

    #[test]
    fn under_relation_is_upward_closed(seed in any::<u64>()) {
        let c = Ctx::default();
        let mut r = ot_core::harness::gen::rng(seed);
        let shape = ot_core::harness::gen::ValueShape::default();
        if let Some((f, k, _, zeta)) = ot_core::harness::gen::idless_tuple(&c, &mut r, &shape).unwrap() {
            prop_assert!(lt_under(&c, &f, &k, &zeta).unwrap());
        }
    }
}

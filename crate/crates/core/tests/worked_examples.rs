//! Hand-unfolded examples through the public API.

use std::cmp::Ordering;

use ot_core::hull::{attrs, collapse, in_closure, in_hull, in_m, validate_ot};
use ot_core::order::{a_measure, is_irreducible, lt_lex, lt_under, o_measure, o_measure_mu, Ctx};
use ot_core::term::arith::{normalize_sum, omega_tower, succ};
use ot_core::term::lnf::theta_minus;
use ot_core::textio::{parse, parse_fnmap, parse_lnf};
use ot_core::{compare, Lnf, Term};

fn t(s: &str) -> Term {
    parse(s).unwrap()
}

fn l(s: &str) -> Lnf {
    parse_lnf(s).unwrap()
}

fn cx() -> Ctx {
    Ctx::default()
}

#[test]
fn sums_absorb_smaller_left_parts() {
    let c = cx();
    assert_eq!(normalize_sum(&c, &[Term::Zero, Term::Zero]).unwrap(), Term::Zero);
    let w = t("phi(0,1)");
    let ww = t("phi(0,phi(0,1))");
    assert_eq!(normalize_sum(&c, &[w.clone(), ww.clone()]).unwrap(), ww);
    assert_eq!(normalize_sum(&c, &[ww.clone(), w.clone()]).unwrap(), t("phi(0,phi(0,1)) + phi(0,1)"));
}

#[test]
fn lambda_forms() {
    let x = l("th(1,2)*3 + th(1,1)*2 + 1");
    assert_eq!(x.terms.len(), 3);
    assert_eq!(x.head().unwrap(), l("th(1,2)"));
    assert_eq!(x.tail().unwrap(), l("1"));
    let segs = x.segments();
    assert_eq!(segs, vec![l("0"), l("th(1,2)*3"), l("th(1,2)*3 + th(1,1)*2"), x.clone()]);
    assert_eq!(l("2").segments(), vec![l("0"), l("2")]);
}

#[test]
fn theta_minus_unfoldings() {
    let c = cx();
    assert_eq!(theta_minus(&c, &Term::one(), &l("th(1,5)")).unwrap(), l("5"));
    let w = Term::omega_small();
    assert_eq!(theta_minus(&c, &w, &l("th(1,0)")).unwrap(), Lnf::zero());
    assert_eq!(theta_minus(&c, &w, &l("th(1,1)")).unwrap(), Lnf::zero());
}

#[test]
fn towers() {
    let c = cx();
    let x = succ(&c, &Term::Lambda).unwrap();
    assert_eq!(omega_tower(&c, 0, &x).unwrap(), x);
    assert_eq!(omega_tower(&c, 1, &Term::Zero).unwrap(), Term::one());
    assert_eq!(omega_tower(&c, 2, &x).unwrap(), t("phi(0, phi(0, L + 1))"));
}

#[test]
fn comparisons() {
    assert_eq!(compare(&t("0"), &t("Om")).unwrap(), Ordering::Less);
    assert_eq!(compare(&t("psi(L; 0)"), &t("S")).unwrap(), Ordering::Greater);
    assert_eq!(compare(&t("phi(0,1)"), &t("phi(0,phi(0,1))")).unwrap(), Ordering::Less);
}

#[test]
fn under_relation() {
    let c = cx();
    let one = Term::one();
    let empty = parse_fnmap("{}").unwrap();
    assert!(lt_under(&c, &empty, &one, &l("1")).unwrap());
    let f = parse_fnmap("{1: 1}").unwrap();
    assert!(lt_under(&c, &f, &one, &l("2")).unwrap());
    assert!(!lt_under(&c, &f, &one, &l("1")).unwrap());
}

#[test]
fn irreducibility() {
    let c = cx();
    assert!(is_irreducible(&c, &parse_fnmap("{}").unwrap()).unwrap());
    assert!(is_irreducible(&c, &parse_fnmap("{1: th(1,2), 2: 1}").unwrap()).unwrap());
    assert!(!is_irreducible(&c, &parse_fnmap("{1: 1, 2: 1}").unwrap()).unwrap());
}

#[test]
fn lexicographic() {
    let c = cx();
    let f = parse_fnmap("{1: 2}").unwrap();
    assert!(!lt_lex(&c, &f, &f, &Term::Zero).unwrap());
    assert!(lt_lex(&c, &parse_fnmap("{}").unwrap(), &parse_fnmap("{1: 1}").unwrap(), &Term::Zero).unwrap());
    // {1: 1, 2: 1} is reducible, so it is outside the relation's domain
    assert!(lt_lex(&c, &f, &parse_fnmap("{1: 1, 2: 1}").unwrap(), &Term::Zero).is_err());
    // case (b): ν = Λ² + 1 > g(1) = Λ², tl(ν) = 1 ≤ θ̃_1(g(2)) = Λ, and f <² g
    let f = parse_fnmap("{1: th(1,2) + 1}").unwrap();
    let g = parse_fnmap("{1: th(1,2), 2: 1}").unwrap();
    assert!(lt_lex(&c, &f, &g, &Term::Zero).unwrap());
    assert!(!lt_lex(&c, &g, &f, &Term::Zero).unwrap());
}

#[test]
fn measures() {
    let c = cx();
    assert_eq!(a_measure(&c, &Lnf::zero()).unwrap(), Lnf::zero());
    assert_eq!(a_measure(&c, &l("1")).unwrap(), l("1"));
    assert_eq!(a_measure(&c, &l("th(1,1)*5")).unwrap(), l("th(1,phi(0,1))"));
    assert_eq!(o_measure(&c, &parse_fnmap("{}").unwrap()).unwrap(), Lnf::zero());
    let f = parse_fnmap("{1: 1}").unwrap();
    assert_eq!(o_measure(&c, &f).unwrap(), l("th(1, phi(0,1) + 1)"));
    let mu = t("phi(1,0)");
    let m = o_measure_mu(&c, &f, &mu).unwrap();
    assert_eq!(m.base, mu);
    // ε_0^{ω+1} = ω^{ε_0·ω + ε_0} = ω^{ω^{ε_0+1} + ε_0}
    assert_eq!(m.to_main(&c).unwrap(), t("phi(0, phi(0, phi(1,0) + 1) + phi(1,0))"));
}

#[test]
fn hulls() {
    let c = cx();
    let a = t("Om");
    assert!(in_hull(&c, &Term::Zero, &a, &Term::Zero).unwrap());
    assert!(in_hull(&c, &t("5"), &a, &t("Om")).unwrap());
    assert!(!in_hull(&c, &t("psi(L; Om)"), &a, &Term::Zero).unwrap());
    assert!(in_closure(&c, &Term::Lambda, &a, &[]).unwrap());
}

#[test]
fn validation() {
    let c = cx();
    assert!(validate_ot(&c, &Term::Zero).valid);
    assert!(!validate_ot(&c, &Term::reg_raw(Term::Stable)).valid);
    let bad = validate_ot(&c, &t("psi(S; 0; {1: 2})"));
    assert!(!bad.valid);
    assert!(bad.failures.iter().any(|f| f.condition.contains("max SC")));
}

#[test]
fn attributes_and_collapse() {
    let c = cx();
    assert_eq!(attrs(&c, &Term::Omega).unwrap().big_o.value, l("1"));
    assert_eq!(attrs(&c, &Term::Stable).unwrap().big_o.value, l("th(1,1)"));
    let rho = t("psi(S; 1; {1: 1})");
    let a = attrs(&c, &rho).unwrap();
    assert_eq!(a.big_o, o_measure_mu(&c, &parse_fnmap("{1: 1}").unwrap(), a.lam.as_ref().unwrap()).unwrap());
    assert!(!in_m(&c, &rho, &rho).unwrap());
    assert!(in_m(&c, &Term::Stable, &rho).unwrap());
    assert!(in_m(&c, &t("Om + 1"), &rho).unwrap());
    assert_eq!(collapse(&c, &Term::Stable, &rho).unwrap(), rho);
    assert_eq!(collapse(&c, &t("Om + 1"), &rho).unwrap(), t("Om + 1"));
    let up = collapse(&c, &t("psi(L; 0)"), &rho).unwrap();
    assert_eq!(up, Term::psi_raw(Term::reg_raw(rho.clone()), ot_core::FiniteFn::empty(), Term::Zero));
}

#[test]
fn parser_maps_constructors() {
    assert_eq!(t("0"), Term::Zero);
    let p = t("psi(S; L; {0: th(1,0)})");
    let q = Term::psi_raw(Term::Stable, parse_fnmap("{0: 1}").unwrap(), Term::Lambda);
    assert_eq!(p, q);
}

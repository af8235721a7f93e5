//! Structural shrinking: drop sum parts, shrink components and coefficients,
//! drop support points. Candidates are renormalized but not validated.

use crate::order::Ctx;
use crate::term::arith;
use crate::term::lnf::{Lnf, LnfTerm};
use crate::term::{FiniteFn, Term};

/// One-step shrinks of `t`, at the root and at every position below it.
pub fn shrinks(cx: &Ctx, t: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    match t {
        Term::Zero => {}
        Term::Omega | Term::Stable | Term::Lambda => out.push(Term::Zero),
        Term::Sum(ps) => {
            for i in 0..ps.len() {
                let mut rest = ps.to_vec();
                rest.remove(i);
                push_ok(&mut out, arith::normalize_sum(cx, &rest));
                for s in shrinks(cx, &ps[i]) {
                    let mut parts = ps.to_vec();
                    parts[i] = s;
                    push_ok(&mut out, arith::normalize_sum(cx, &parts));
                }
            }
        }
        Term::Phi(a, b) => {
            out.push((**a).clone());
            out.push((**b).clone());
            for s in shrinks(cx, a) {
                push_ok(&mut out, arith::phi(cx, &s, b));
            }
            for s in shrinks(cx, b) {
                push_ok(&mut out, arith::phi(cx, a, &s));
            }
        }
        Term::NextReg(a) => {
            out.push((**a).clone());
            for s in shrinks(cx, a) {
                out.push(if s.is_zero() { Term::Omega } else { Term::reg_raw(s) });
            }
        }
        Term::Psi(p) => {
            out.push(p.sub.clone());
            out.push(p.idx.clone());
            for s in shrinks(cx, &p.idx) {
                out.push(Term::psi_raw(p.sub.clone(), p.func.clone(), s));
            }
            for s in shrinks(cx, &p.sub) {
                out.push(Term::psi_raw(s, p.func.clone(), p.idx.clone()));
            }
            for g in fn_shrinks(cx, &p.func) {
                out.push(Term::psi_raw(p.sub.clone(), g, p.idx.clone()));
            }
        }
        Term::Theta(_) => out.extend(lnf_shrinks(cx, t)),
    }
    out.retain(|s| s != t);
    out
}

/// Shrinks of a Λ-base value.
pub fn lnf_shrinks(cx: &Ctx, v: &Term) -> Vec<Term> {
    let Ok(l) = Lnf::from_term(cx, v) else {
        return vec![];
    };
    let mut out = Vec::new();
    for i in 0..l.terms.len() {
        let mut dropped = l.clone();
        dropped.terms.remove(i);
        out.push(dropped.to_term());
        let t = &l.terms[i];
        let mut variants = Vec::new();
        for c in shrinks(cx, &t.coeff) {
            if !c.is_zero() {
                variants.push(LnfTerm::new(t.iter.clone(), t.arg.clone(), c));
            }
        }
        if !t.arg.is_zero() {
            for a in lnf_shrinks(cx, &t.arg) {
                variants.push(LnfTerm::new(t.iter.clone(), a, t.coeff.clone()));
            }
        }
        for b in shrinks(cx, &t.iter) {
            if !b.is_zero() {
                variants.push(LnfTerm::new(b, t.arg.clone(), t.coeff.clone()));
            }
        }
        for nt in variants {
            let mut m = l.clone();
            m.terms[i] = nt;
            out.push(m.to_term());
        }
    }
    out.retain(|s| s != v);
    out
}

/// Drop a support point, or shrink a single value or key.
pub fn fn_shrinks(cx: &Ctx, f: &FiniteFn) -> Vec<FiniteFn> {
    let mut out = Vec::new();
    let es = f.entries();
    for i in 0..es.len() {
        let mut rest = es.to_vec();
        rest.remove(i);
        out.push(FiniteFn::from_sorted(rest));
        for v in lnf_shrinks(cx, &es[i].1) {
            let mut e = es.to_vec();
            e[i].1 = v;
            if let Ok(g) = FiniteFn::new(cx, e) {
                out.push(g);
            }
        }
        for k in shrinks(cx, &es[i].0) {
            let mut e = es.to_vec();
            e[i].0 = k;
            if let Ok(g) = FiniteFn::new(cx, e) {
                out.push(g);
            }
        }
    }
    out
}

fn push_ok(out: &mut Vec<Term>, t: crate::error::Result<Term>) {
    if let Ok(t) = t {
        out.push(t);
    }
}

/// Greedy structural minimization: keep replacing `t` by a valid shrink on
/// which `fails` still holds.
pub fn minimize(cx: &Ctx, t: &Term, mut fails: impl FnMut(&Term) -> bool) -> Term {
    let mut cur = t.clone();
    // bounded, since every accepted step shrinks the term
    'outer: for _ in 0..1000 {
        let mut cands = shrinks(cx, &cur);
        cands.sort_by_key(Term::node_count);
        for c in cands {
            if c.node_count() < cur.node_count() && crate::hull::validate_ot(cx, &c).valid && fails(&c) {
                cur = c;
                continue 'outer;
            }
        }
        break;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn sums_lose_parts() {
        let c = Ctx::default();
        let s = shrinks(&c, &t("Om + 2"));
        assert!(s.contains(&t("Om + 1")));
        assert!(s.contains(&t("2")));
    }

    #[test]
    fn functions_lose_points() {
        let c = Ctx::default();
        let s = shrinks(&c, &t("psi(S; 2; {1: 2})"));
        assert!(s.contains(&t("psi(S; 2; {1: 1})")));
        assert!(s.contains(&Term::psi_raw(Term::Stable, FiniteFn::empty(), Term::nat(2))));
    }

    #[test]
    fn minimize_finds_the_least_witness() {
        let c = Ctx::default();
        let m = minimize(&c, &t("phi(2, Om + 3)"), |x| x.node_count() >= 1 && x != &Term::Zero);
        assert_eq!(m.node_count(), 1);
    }
}

//! Validation of notation terms.
//!
//! A collapsing term is admitted by one of three formers:
//!
//! * `ψ_κ(a)` with empty function for `κ ∈ {Ω, Λ, σ⁺}`, when `{κ, a} ⊂ H_a(ψ_κ(a))`;
//! * `ψ_S^f(a)` with a one-point support;
//! * the step-down former `ψ_π^g(a)` for `π ∈ Ψ_S`, which derives `g` from `m(π)`.
//!
//! `α⁺` is admitted for `α = 0` (spelled `Ω`) and for `α ∈ Ψ_S`. Sums and
//! Veblen terms must be in normal form.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::hull::{in_hull, in_m};
use crate::order::{cmp, cmp_lnf, is_irreducible, lt, lt_under, max_of, Ctx};
use crate::term::arith::{self, left_sub, next_eps};
use crate::term::lnf::{is_normal_theta, theta, Lnf};
use crate::term::{FiniteFn, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Atom,
    Closure,
    /// `ψ_κ(a)` for `κ ∈ {Ω, Λ, σ⁺}`.
    PsiPlain,
    /// `ψ_S^f(a)`.
    PsiStable,
    /// `ψ_π^g(a)` for `π ∈ Ψ_S`.
    PsiStepDown,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::Atom => "atom",
            Rule::Closure => "closure",
            Rule::PsiPlain => "psi-plain",
            Rule::PsiStable => "psi-stable",
            Rule::PsiStepDown => "psi-step-down",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub subterm: String,
    pub condition: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub rule: Option<Rule>,
    pub failures: Vec<Failure>,
}

struct Checker<'a> {
    cx: &'a Ctx,
    failures: Vec<Failure>,
}

impl Checker<'_> {
    fn fail(&mut self, t: &Term, condition: impl Into<String>) {
        self.failures.push(Failure { subterm: t.to_string(), condition: condition.into() });
    }

    /// Record `cond`; errors raised while deciding it count as failures.
    fn require(&mut self, t: &Term, cond: Result<bool>, condition: &str) -> bool {
        match cond {
            Ok(true) => true,
            Ok(false) => {
                self.fail(t, condition);
                false
            }
            Err(e) => {
                self.fail(t, format!("{condition}: {e}"));
                false
            }
        }
    }
}

/// Check the full construction discipline. Never fails; every violation is
/// listed in the report.
pub fn validate_ot(cx: &Ctx, t: &Term) -> ValidationReport {
    let mut ch = Checker { cx, failures: Vec::new() };
    let rule = check_main(&mut ch, t);
    ValidationReport { valid: ch.failures.is_empty(), rule: Some(rule), failures: ch.failures }
}

/// Check a Λ-base value as it would appear in a finite function.
pub fn validate_lnf(cx: &Ctx, v: &Term) -> ValidationReport {
    let mut ch = Checker { cx, failures: Vec::new() };
    check_lnf(&mut ch, v);
    ValidationReport { valid: ch.failures.is_empty(), rule: None, failures: ch.failures }
}

fn check_main(ch: &mut Checker, t: &Term) -> Rule {
    let cx = ch.cx;
    match t {
        Term::Zero | Term::Omega | Term::Stable | Term::Lambda => Rule::Atom,
        Term::Theta(_) => {
            ch.fail(t, "Λ-base term in a main-view position");
            Rule::Closure
        }
        Term::Sum(ps) => {
            if t.is_lnf_view() {
                ch.fail(t, "Λ-base sum in a main-view position");
                return Rule::Closure;
            }
            if ps.len() < 2 {
                ch.fail(t, "sum with fewer than two parts");
            }
            for p in ps.iter() {
                if !p.is_principal() {
                    ch.fail(p, "sum part is not additively principal");
                } else {
                    check_main(ch, p);
                }
            }
            for w in ps.windows(2) {
                ch.require(t, cmp(cx, &w[0], &w[1]).map(|o| o != Ordering::Less), "sum parts weakly decreasing");
            }
            Rule::Closure
        }
        Term::Phi(a, b) => {
            check_main(ch, a);
            check_main(ch, b);
            ch.require(t, arith::phi(cx, a, b).map(|n| &n == t), "Veblen term in normal form");
            Rule::Closure
        }
        Term::NextReg(x) => {
            check_main(ch, x);
            if x.is_zero() {
                ch.fail(t, "0⁺ is written Om");
            }
            ch.require(t, lt(cx, x, &Term::Stable), "α⁺ needs α < S");
            if !x.is_zero() && !x.in_psi_s() {
                ch.fail(t, "α⁺ needs α ∈ Ψ_S");
            }
            Rule::Closure
        }
        Term::Psi(p) => {
            check_main(ch, &p.sub);
            check_main(ch, &p.idx);
            check_fn(ch, t, &p.func);
            ch.require(t, Lnf::from_term(cx, &p.idx).map(|_| true), "index below ε_(Λ+1)");
            match &p.sub {
                Term::Omega | Term::Lambda | Term::NextReg(_) => {
                    if !p.func.is_empty() {
                        ch.fail(t, "only S and Ψ_S subscripts carry a finite function");
                    }
                    let inside = in_hull(cx, &p.sub, &p.idx, t)
                        .and_then(|ok| Ok(ok && in_hull(cx, &p.idx, &p.idx, t)?));
                    ch.require(t, inside, "{κ, a} ⊂ H_a(α)");
                    Rule::PsiPlain
                }
                Term::Stable => {
                    check_stable(ch, t, &p.func, &p.idx);
                    Rule::PsiStable
                }
                pi if pi.in_psi_s() => {
                    check_step_down(ch, t, pi, &p.func, &p.idx);
                    Rule::PsiStepDown
                }
                _ => {
                    ch.fail(t, "subscript is not Ω, S, Λ, σ⁺ or a member of Ψ_S");
                    Rule::PsiPlain
                }
            }
        }
    }
}

/// Keys below `Λ`, values well-formed Λ-base forms with the coefficient
/// discipline, and the function irreducible.
fn check_fn(ch: &mut Checker, t: &Term, f: &FiniteFn) {
    let cx = ch.cx;
    for (k, v) in f.entries() {
        check_main(ch, k);
        ch.require(k, lt(cx, k, &Term::Lambda), "finite-function key below Λ");
        check_lnf(ch, v);
    }
    for w in f.entries().windows(2) {
        ch.require(t, lt(cx, &w[0].0, &w[1].0), "finite-function keys increasing");
    }
    ch.require(t, f.coefficients_ok(cx), "finite-function coefficient discipline");
    ch.require(t, is_irreducible(cx, f), "finite function irreducible");
}

fn check_lnf(ch: &mut Checker, v: &Term) {
    let cx = ch.cx;
    let lnf = match Lnf::from_term(cx, v) {
        Ok(l) => l,
        Err(e) => {
            ch.fail(v, format!("Λ-base form: {e}"));
            return;
        }
    };
    if !v.is_zero() && !v.is_lnf_view() {
        ch.fail(v, "value not written in the Λ-base view");
    }
    for t in &lnf.terms {
        check_main(ch, &t.iter);
        check_main(ch, &t.coeff);
        if !t.arg.is_zero() {
            check_lnf(ch, &t.arg);
        }
        if !t.iter.is_principal() {
            ch.fail(&t.to_term(), "iterate index is a power of ω");
        }
        if t.coeff.is_zero() {
            ch.fail(&t.to_term(), "coefficient is positive");
        }
        ch.require(&t.to_term(), lt(cx, &t.coeff, &Term::Lambda), "coefficient below Λ");
        let arg = Lnf::from_term(cx, &t.arg);
        ch.require(&t.to_term(), arg.and_then(|a| is_normal_theta(cx, &t.iter, &a)), "θ̃_b(ξ) > ξ");
    }
    for w in lnf.terms.windows(2) {
        let o = crate::order::cmp_theta(cx, &w[0], &w[1]);
        ch.require(v, o.map(|o| o == Ordering::Greater), "Λ-base summands strictly decreasing");
    }
}

fn max_sc(cx: &Ctx, ts: &[Term]) -> Result<Term> {
    Ok(max_of(cx, ts)?.unwrap_or(Term::Zero))
}

/// `ψ_S^f(a)` with `supp(f) = {c}`, `{f(c), a, c} ⊂ H_a(α)` and
/// `max SC(f) ≤ max SC(a)`.
fn check_stable(ch: &mut Checker, t: &Term, f: &FiniteFn, a: &Term) {
    let cx = ch.cx;
    if f.len() != 1 {
        ch.fail(t, "ψ_S needs a one-point support");
        return;
    }
    let (c, xi) = &f.entries()[0];
    let inside = [xi, a, c].into_iter().try_fold(true, |ok, x| Ok(ok && in_hull(cx, x, a, t)?));
    ch.require(t, inside, "{ξ, a, c} ⊂ H_a(α)");
    let bound = Lnf::from_term(cx, a).and_then(|la| {
        let lhs = max_sc(cx, &f.sc_lambda())?;
        let rhs = max_sc(cx, &la.sc_lambda())?;
        Ok(cmp(cx, &lhs, &rhs)? != Ordering::Greater)
    });
    ch.require(t, bound, "max SC(f) ≤ max SC(a)");
}

/// The step-down former. Tries every admissible pair `d < c` and keeps the
/// attempt with the fewest failures.
fn check_step_down(ch: &mut Checker, t: &Term, pi: &Term, g: &FiniteFn, a: &Term) {
    let cx = ch.cx;
    let f = &pi.as_psi().expect("Ψ_S member").func;

    // shared conditions
    let mut params: Vec<Term> = vec![pi.clone(), a.clone()];
    params.extend(f.sc_lambda());
    params.extend(g.sc_lambda());
    let inside = params.iter().try_fold(true, |ok, x| Ok(ok && in_hull(cx, x, a, t)?));
    ch.require(t, inside, "{π, a} ∪ SC(f, g) ⊂ H_a(α)");
    let in_m_alpha = g.sc_lambda().iter().try_fold(true, |ok, x| Ok(ok && in_m(cx, x, t)?));
    ch.require(t, in_m_alpha, "SC(g) ⊂ M_α");
    let eps = max_sc(cx, &f.sc_lambda())
        .and_then(|m| next_eps(cx, &m))
        .and_then(|mu| lt(cx, &max_sc(cx, &g.sc_lambda())?, &mu));
    ch.require(t, eps, "max SC(g) below the least epsilon above max SC(f)");

    let mut best: Option<Vec<Failure>> = None;
    let keys = f.support();
    for (ci, c) in keys.iter().enumerate() {
        let mut ds: Vec<Term> = vec![Term::Zero];
        ds.extend(keys.iter().take(ci).cloned());
        ds.extend(g.support());
        for d in ds {
            let mut sub = Checker { cx, failures: Vec::new() };
            match step_down_pair(&mut sub, t, f, g, &d, c, ci) {
                Some(()) if sub.failures.is_empty() => return,
                _ => {}
            }
            if !sub.failures.is_empty() && best.as_ref().is_none_or(|b| sub.failures.len() < b.len()) {
                best = Some(sub.failures);
            }
        }
    }
    match best {
        Some(fs) => ch.failures.extend(fs),
        None => ch.fail(t, "no d < c ∈ supp(m(π)) for the step-down former"),
    }
}

/// Conditions for one choice of `d < c`. Returns `None` when `d` is not
/// below `c` or the gap `(d, c)` meets `supp(f)`; such pairs are skipped.
fn step_down_pair(
    ch: &mut Checker,
    t: &Term,
    f: &FiniteFn,
    g: &FiniteFn,
    d: &Term,
    c: &Term,
    ci: usize,
) -> Option<()> {
    let cx = ch.cx;
    if !lt(cx, d, c).ok()? {
        return None;
    }
    if ci > 0 && lt(cx, d, &f.entries()[ci - 1].0).ok()? {
        return None;
    }
    let gap_free = g
        .support()
        .iter()
        .try_fold(true, |ok, k| Ok::<_, crate::error::OrdError>(ok && !(lt(cx, d, k)? && lt(cx, k, c)?)));
    ch.require(t, gap_free, "(d, c) ∩ supp(g) = ∅");
    let agree = f.split(cx, d).and_then(|(fd, _)| Ok(fd == g.split(cx, d)?.0));
    ch.require(t, agree, "g_d = f_d");
    let bound = (|| {
        let fd = f.get_lnf(cx, d)?;
        let gd = g.get_lnf(cx, d)?;
        let th = theta(cx, &left_sub(cx, c, d)?, &f.get_lnf(cx, c)?)?;
        let rhs = fd.add(cx, &th.times_omega()?)?;
        Ok(cmp_lnf(cx, &gd, &rhs)? == Ordering::Less)
    })();
    ch.require(t, bound, "g(d) < f(d) + θ̃_(c-d)(f(c))·ω");
    let under = f.get_lnf(cx, c).and_then(|fc| lt_under(cx, g, c, &fc));
    ch.require(t, under, "g <^c f(c)");
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse;

    fn check(s: &str) -> ValidationReport {
        validate_ot(&Ctx::default(), &parse(s).unwrap())
    }

    #[test]
    fn atoms_and_closure() {
        assert!(check("0").valid);
        assert_eq!(check("0").rule, Some(Rule::Atom));
        assert!(check("phi(0,1) + 2").valid);
        assert!(check("psi(Om; 0)").valid);
        assert!(check("psi(L; S)").valid);
    }

    #[test]
    fn next_regular_of_stable_is_rejected() {
        let r = validate_ot(&Ctx::default(), &Term::reg_raw(Term::Stable));
        assert!(!r.valid);
        assert!(r.failures.iter().any(|f| f.condition.contains("α < S")));
    }

    #[test]
    fn stable_collapses() {
        let r = check("psi(S; 1; {1: 1})");
        assert!(r.valid, "{r:?}");
        assert_eq!(r.rule, Some(Rule::PsiStable));
        // max SC(f) = S exceeds max SC(a) = 1
        assert!(!check("psi(S; 1; {S: 1})").valid);
        assert!(!check("psi(S; 1)").valid);
    }

    #[test]
    fn step_down_former() {
        let r = check("psi(psi(S; 2; {1: 2}); 3)");
        assert!(r.valid, "{r:?}");
        assert_eq!(r.rule, Some(Rule::PsiStepDown));
        let r = check("psi(psi(S; 2; {1: 2}); 3; {0: 5})");
        assert!(r.valid, "{r:?}");
        // g(1) = 2 is not below f(1) = 2, so g <^1 f(1) fails
        let r = check("psi(psi(S; 2; {1: 2}); 3; {1: 2})");
        assert!(!r.valid);
        assert!(r.failures.iter().any(|f| f.condition == "g <^c f(c)"), "{r:?}");
    }
}

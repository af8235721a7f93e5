//! Hull membership, the closures `C^α(X)`, validation of notation terms,
//! their attributes and the collapsing map.

pub mod attrs;
pub mod collapse;
pub mod validate;

use std::cmp::Ordering;

use crate::error::Result;
use crate::order::{cmp, lt, sort_dedup, Ctx};
use crate::term::arith::left_sub;
use crate::term::Term;

pub use attrs::{attrs, in_m, lambda_of, p0, PsiAttrs};
pub use collapse::collapse;
pub use validate::{validate_lnf, validate_ot, Failure, Rule, ValidationReport};

/// `γ ∈ H_a(β)`, with `X` read as the initial segment below `β`.
///
/// Compound terms other than collapsing terms are members iff their
/// components are; a collapsing term is a member if it lies below `β` or its
/// index is below `a` with all of its parameters members.
pub fn in_hull(cx: &Ctx, gamma: &Term, a: &Term, beta: &Term) -> Result<bool> {
    match gamma {
        Term::Zero | Term::Omega | Term::Stable | Term::Lambda => Ok(true),
        Term::Psi(p) => {
            if lt(cx, gamma, beta)? {
                return Ok(true);
            }
            if !lt(cx, &p.idx, a)? {
                return Ok(false);
            }
            if !in_hull(cx, &p.sub, a, beta)? || !in_hull(cx, &p.idx, a, beta)? {
                return Ok(false);
            }
            all(cx, &p.func.sc_lambda(), |t| in_hull(cx, t, a, beta))
        }
        _ => all(cx, &gamma.children(), |t| in_hull(cx, t, a, beta)),
    }
}

fn all(_cx: &Ctx, ts: &[Term], mut f: impl FnMut(&Term) -> Result<bool>) -> Result<bool> {
    for t in ts {
        if !f(t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `γ ∈ C^α(X)`: the closure of `{0, Ω, S, Λ} ∪ (X ∩ α)` under `+`, `σ ↦ σ⁺`,
/// `φ`, and collapsing terms whose subscript exceeds `α`.
pub fn in_closure(cx: &Ctx, gamma: &Term, alpha: &Term, x: &[Term]) -> Result<bool> {
    if x.contains(gamma) && lt(cx, gamma, alpha)? {
        return Ok(true);
    }
    match gamma {
        Term::Zero | Term::Omega | Term::Stable | Term::Lambda => Ok(true),
        Term::Sum(ps) => {
            let rest = crate::term::arith::from_parts(ps[1..].to_vec());
            if in_closure(cx, &ps[0], alpha, x)? && in_closure(cx, &rest, alpha, x)? {
                return Ok(true);
            }
            // γ = x + r with x ∈ X ∩ α
            for el in x {
                if el.is_zero() || !lt(cx, el, alpha)? || cmp(cx, el, gamma)? != Ordering::Less {
                    continue;
                }
                if let Ok(r) = left_sub(cx, gamma, el) {
                    if &r != gamma && in_closure(cx, &r, alpha, x)? {
                        return Ok(true);
                    }
                }
            }
            Ok(false)
        }
        Term::Psi(p) => {
            if !lt(cx, alpha, &p.sub)? {
                return Ok(false);
            }
            if !in_closure(cx, &p.sub, alpha, x)? || !in_closure(cx, &p.idx, alpha, x)? {
                return Ok(false);
            }
            all(cx, &p.func.sc_lambda(), |t| in_closure(cx, t, alpha, x))
        }
        _ => all(cx, &gamma.children(), |t| in_closure(cx, t, alpha, x)),
    }
}

/// `E_S(α)`: the subterms of `α` below `S`, ascending.
pub fn subterms_below_s(cx: &Ctx, alpha: &Term) -> Result<Vec<Term>> {
    let mut out = Vec::new();
    for t in alpha.subterms() {
        if t.is_lnf_view() {
            continue;
        }
        if lt(cx, &t, &Term::Stable)? {
            out.push(t);
        }
    }
    sort_dedup(cx, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn hull_examples() {
        let c = Ctx::default();
        assert!(in_hull(&c, &Term::Zero, &Term::one(), &Term::Zero).unwrap());
        assert!(in_hull(&c, &t("psi(Om; 0)"), &Term::Zero, &t("psi(Om; 1)")).unwrap());
        let a = t("1");
        assert!(!in_hull(&c, &t("psi(L; 1)"), &a, &Term::Zero).unwrap());
        assert!(in_hull(&c, &t("psi(L; 0)"), &a, &Term::Zero).unwrap());
    }

    #[test]
    fn closure_examples() {
        let c = Ctx::default();
        let alpha = t("psi(Om; 1)");
        assert!(in_closure(&c, &Term::Lambda, &alpha, &[]).unwrap());
        let x = t("psi(Om; 0)");
        assert!(in_closure(&c, &x, &alpha, std::slice::from_ref(&x)).unwrap());
        // below S the ψ_Ω terms are reachable only through X
        assert!(!in_closure(&c, &x, &Term::Stable, &[]).unwrap());
        assert!(in_closure(&c, &x, &Term::Stable, std::slice::from_ref(&x)).unwrap());
        assert!(in_closure(&c, &t("psi(L; S)"), &alpha, &[]).unwrap());
    }

    #[test]
    fn subterms_below_stable() {
        let c = Ctx::default();
        assert_eq!(subterms_below_s(&c, &Term::Zero).unwrap(), vec![Term::Zero]);
        assert!(subterms_below_s(&c, &Term::Stable).unwrap().is_empty());
        let got = subterms_below_s(&c, &t("phi(0, psi(Om; 1) + 1)")).unwrap();
        let want = ["0", "1", "psi(Om; 1)", "psi(Om; 1) + 1", "phi(0, psi(Om; 1) + 1)", "Om"];
        assert_eq!(got, want.iter().map(|s| t(s)).collect::<Vec<_>>());
    }
}

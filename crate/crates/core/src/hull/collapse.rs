//! The collapse `α ↦ α[ρ/S]` of `M_ρ` onto an initial segment.

use crate::error::{OrdError, Result};
use crate::hull::in_m;
use crate::order::{lt, Ctx};
use crate::term::arith::{next_reg, normalize_sum, phi};
use crate::term::{FiniteFn, Term};

/// `α[ρ/S]` for `α ∈ M_ρ`: `S ↦ ρ`, `Λ ↦ ρ⁺`, `ψ_Λ(a) ↦ ψ_{ρ⁺}(a[ρ/S])`,
/// identity below `S`, and commuting with `+` and `φ`.
pub fn collapse(cx: &Ctx, alpha: &Term, rho: &Term) -> Result<Term> {
    if !in_m(cx, alpha, rho)? {
        return Err(OrdError::domain(format!("{alpha} is not in M_{rho}")));
    }
    go(cx, alpha, rho)
}

fn go(cx: &Ctx, alpha: &Term, rho: &Term) -> Result<Term> {
    if lt(cx, alpha, &Term::Stable)? {
        return Ok(alpha.clone());
    }
    match alpha {
        Term::Stable => Ok(rho.clone()),
        Term::Lambda => Ok(next_reg(rho)),
        Term::Sum(ps) => {
            let parts = ps.iter().map(|p| go(cx, p, rho)).collect::<Result<Vec<_>>>()?;
            normalize_sum(cx, &parts)
        }
        Term::Phi(a, b) => phi(cx, &go(cx, a, rho)?, &go(cx, b, rho)?),
        Term::Psi(p) if p.sub == Term::Lambda && p.func.is_empty() => {
            Ok(Term::psi_raw(next_reg(rho), FiniteFn::empty(), go(cx, &p.idx, rho)?))
        }
        _ => Err(OrdError::domain(format!("no collapse clause for {alpha}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn collapse_examples() {
        let c = Ctx::default();
        let rho = t("psi(S; 1; {1: 1})");
        assert_eq!(collapse(&c, &Term::Stable, &rho).unwrap(), rho);
        let small = t("psi(Om; 0) + 1");
        assert_eq!(collapse(&c, &small, &rho).unwrap(), small);
        assert_eq!(collapse(&c, &Term::Lambda, &rho).unwrap(), Term::reg_raw(rho.clone()));
        assert!(collapse(&c, &rho, &rho).is_err());
        let rho = t("psi(S; S + 1; {1: 1})");
        let got = collapse(&c, &t("psi(L; S)"), &rho).unwrap();
        assert_eq!(got, Term::psi_raw(Term::reg_raw(rho.clone()), FiniteFn::empty(), rho.clone()));
    }
}

//! `m(α)`, `p₀(α)`, `Λ(γ)`, `O(γ)` and the hulls `M_ρ`.

use crate::error::{OrdError, Result};
use crate::hull::in_hull;
use crate::order::{max_of, o_measure_mu, Ctx, Measure};
use crate::term::arith::next_eps;
use crate::term::lnf::Lnf;
use crate::term::{FiniteFn, Term};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PsiAttrs {
    pub m: FiniteFn,
    /// `None` off `Ψ_S`.
    pub p0: Option<Term>,
    /// `None` off `Ψ_S`.
    pub lam: Option<Term>,
    pub big_o: Measure,
}

/// `p₀(ψ_S^f(a)) = a`, and `p₀(ψ_σ^f(a)) = p₀(σ)` along the subscript chain.
pub fn p0(rho: &Term) -> Result<Term> {
    let mut cur = rho;
    loop {
        match cur {
            Term::Psi(p) if p.sub == Term::Stable => return Ok(p.idx.clone()),
            Term::Psi(p) => cur = &p.sub,
            _ => return Err(OrdError::domain(format!("{rho} is not in Ψ_S"))),
        }
    }
}

/// `Λ(γ)`: the least epsilon number above `S` and above `max SC_Λ(p₀(γ))`.
pub fn lambda_of(cx: &Ctx, gamma: &Term) -> Result<Term> {
    let b = p0(gamma)?;
    let sc = Lnf::from_term(cx, &b)?.sc_lambda();
    let mut floor = vec![Term::Stable];
    floor.extend(sc);
    let top = max_of(cx, &floor)?.expect("non-empty");
    next_eps(cx, &top)
}

/// The attributes of a term in `Ψ_S` or of an atom.
pub fn attrs(cx: &Ctx, gamma: &Term) -> Result<PsiAttrs> {
    match gamma {
        Term::Psi(p) if gamma.in_psi_s() => {
            let lam = lambda_of(cx, gamma)?;
            Ok(PsiAttrs {
                m: p.func.clone(),
                p0: Some(p0(gamma)?),
                big_o: o_measure_mu(cx, &p.func, &lam)?,
                lam: Some(lam),
            })
        }
        Term::Psi(_) | Term::Zero | Term::Omega | Term::Stable | Term::Lambda | Term::NextReg(_) => {
            let big_o = match gamma {
                Term::Omega => Lnf::nat(1),
                Term::Stable => Lnf::from_term(cx, &Term::Lambda)?,
                _ => Lnf::zero(),
            };
            Ok(PsiAttrs { m: FiniteFn::empty(), p0: None, lam: None, big_o: Measure::lambda(big_o) })
        }
        _ => Err(OrdError::domain(format!("{gamma} has no collapsing attributes"))),
    }
}

/// `α ∈ M_ρ = H_{p₀(ρ)}(ρ)`.
pub fn in_m(cx: &Ctx, alpha: &Term, rho: &Term) -> Result<bool> {
    if !rho.in_psi_s() {
        return Err(OrdError::domain(format!("{rho} is not in Ψ_S")));
    }
    in_hull(cx, alpha, &p0(rho)?, rho)
}

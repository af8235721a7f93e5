//! The measures `a(ξ)`, `o(f)` and `o_μ(f)`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{OrdError, Result};
use crate::order::{cmp, cmp_lnf, is_irreducible, max_of, Ctx};
use crate::term::arith::{eval_lnf, is_epsilon, left_sub};
use crate::term::lnf::{theta, Lnf};
use crate::term::{FiniteFn, Term};

/// A Λ-base form read with base `base`: `θ̃_1(ξ)` stands for `base^ξ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Measure {
    pub base: Term,
    pub value: Lnf,
}

impl Measure {
    pub fn lambda(value: Lnf) -> Measure {
        Measure { base: Term::Lambda, value }
    }

    /// The value as a main-view term, when every iterate index is 1.
    pub fn to_main(&self, cx: &Ctx) -> Result<Term> {
        eval_lnf(cx, &self.base, &self.value)
    }

    /// Compare two measures. Same-base measures compare symbolically; otherwise
    /// both sides are evaluated in the main view.
    pub fn compare(&self, cx: &Ctx, other: &Measure) -> Result<Ordering> {
        if self.base == other.base {
            return cmp_lnf(cx, &self.value, &other.value);
        }
        cmp(cx, &self.to_main(cx)?, &other.to_main(cx)?)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base == Term::Lambda {
            write!(f, "{}", self.value.to_term())
        } else {
            write!(f, "{} [base {}]", self.value.to_term(), self.base)
        }
    }
}

/// `a(ξ) = Σ θ̃_{b_i}(ω·a(ξ_i))`; coefficients are dropped.
pub fn a_measure(cx: &Ctx, xi: &Lnf) -> Result<Lnf> {
    let mut out = Lnf::zero();
    for t in &xi.terms {
        let inner = a_measure(cx, &Lnf::from_term(cx, &t.arg)?)?.omega_mul(cx)?;
        out = out.add(cx, &theta(cx, &t.iter, &inner)?)?;
    }
    Ok(out)
}

/// `o(f)`, over `{0} ∪ supp(f) = {c_0 < … < c_n}`:
/// `ζ_n = ω·a(ξ_n)` and `ζ_i = ω·a(ξ_i) + θ̃_{c_{i+1} - c_i}(ζ_{i+1} + 1)`.
/// The value at `c_0 = 0` is `f(0)`, which is zero unless `0` is in the support.
pub fn o_measure(cx: &Ctx, f: &FiniteFn) -> Result<Lnf> {
    if !is_irreducible(cx, f)? {
        return Err(OrdError::precondition("o(f) needs an irreducible function"));
    }
    if f.is_empty() {
        return Ok(Lnf::zero());
    }
    let mut points: Vec<Term> = f.support();
    if !points[0].is_zero() {
        points.insert(0, Term::Zero);
    }
    let wa = |c: &Term| -> Result<Lnf> { a_measure(cx, &f.get_lnf(cx, c)?)?.omega_mul(cx) };
    let last = points.len() - 1;
    let mut zeta = wa(&points[last])?;
    for i in (0..last).rev() {
        let gap = left_sub(cx, &points[i + 1], &points[i])?;
        let step = theta(cx, &gap, &zeta.succ(cx)?)?;
        zeta = wa(&points[i])?.add(cx, &step)?;
    }
    Ok(zeta)
}

/// `o_μ(f)`: `o(f)` with base `μ` in place of `Λ`.
pub fn o_measure_mu(cx: &Ctx, f: &FiniteFn, mu: &Term) -> Result<Measure> {
    if !is_epsilon(mu) || cmp(cx, mu, &Term::Lambda)? != Ordering::Less {
        return Err(OrdError::precondition(format!("{mu} is not an epsilon number below Λ")));
    }
    if let Some(top) = max_of(cx, &f.sc_lambda())? {
        if cmp(cx, &top, mu)? != Ordering::Less {
            return Err(OrdError::precondition(format!("SC(f) reaches {top}, not below {mu}")));
        }
    }
    Ok(Measure { base: mu.clone(), value: o_measure(cx, f)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::{parse, parse_lnf};

    fn cx() -> Ctx {
        Ctx::default()
    }

    fn lnf(s: &str) -> Lnf {
        parse_lnf(s).unwrap()
    }

    #[test]
    fn a_examples() {
        let c = cx();
        assert_eq!(a_measure(&c, &Lnf::zero()).unwrap(), Lnf::zero());
        assert_eq!(a_measure(&c, &lnf("1")).unwrap(), lnf("1"));
        // a(Λ·5) = θ̃_1(ω·a(1)) = Λ^ω
        assert_eq!(a_measure(&c, &lnf("th(1,1)*5")).unwrap(), lnf("th(1, phi(0,1))"));
    }

    #[test]
    fn o_examples() {
        let c = cx();
        assert_eq!(o_measure(&c, &FiniteFn::empty()).unwrap(), Lnf::zero());
        let f = FiniteFn::new(&c, vec![(Term::one(), Term::one())]).unwrap();
        // ζ_1 = ω, ζ_0 = θ̃_1(ω + 1)
        assert_eq!(o_measure(&c, &f).unwrap(), lnf("th(1, phi(0,1) + 1)"));
        let mu = parse("phi(1, S+1)").unwrap();
        let m = o_measure_mu(&c, &f, &mu).unwrap();
        // μ^{ω+1} = ω^{μ·ω + μ}
        let expect = parse("phi(0, phi(0, phi(1,S+1) + 1) + phi(1, S+1))").unwrap();
        assert_eq!(m.to_main(&c).unwrap(), expect);
    }

    #[test]
    fn mu_must_dominate_support() {
        let c = cx();
        let f = FiniteFn::new(&c, vec![(Term::Stable, Term::one())]).unwrap();
        assert!(o_measure_mu(&c, &f, &parse("phi(1,0)").unwrap()).is_err());
        assert!(o_measure_mu(&c, &f, &parse("phi(1,S+1)").unwrap()).is_ok());
    }
}

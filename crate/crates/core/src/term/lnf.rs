//! Λ-base normal forms `ξ = θ̃_{b_m}(ξ_m)·a_m + … + θ̃_{b_0}(ξ_0)·a_0`.

use crate::error::{OrdError, Result};
use crate::order::{cmp, cmp_theta, Ctx};
use crate::term::arith;
use crate::term::Term;
use std::cmp::Ordering;

/// One summand `θ̃_iter(arg)·coeff`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LnfTerm {
    pub iter: Term,
    pub arg: Term,
    pub coeff: Term,
}

impl LnfTerm {
    pub fn new(iter: Term, arg: Term, coeff: Term) -> LnfTerm {
        LnfTerm { iter, arg, coeff }
    }

    /// `θ̃_1(0)·a`, an ordinal `a < Λ`.
    pub fn small(a: Term) -> LnfTerm {
        LnfTerm::new(Term::one(), Term::Zero, a)
    }

    /// The coefficient-free part `θ̃_iter(arg)` as a term.
    pub fn principal(&self) -> Term {
        Term::theta_raw(self.iter.clone(), self.arg.clone(), Term::one())
    }

    pub fn to_term(&self) -> Term {
        Term::theta_raw(self.iter.clone(), self.arg.clone(), self.coeff.clone())
    }

    /// Whether this summand is below `Λ`, i.e. of the form `θ̃_1(0)·a`.
    pub fn is_small(&self) -> bool {
        self.iter.is_one() && self.arg.is_zero()
    }
}

/// A Λ-base normal form; `terms[0]` is the head, the last entry the tail.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Lnf {
    pub terms: Vec<LnfTerm>,
}

impl Lnf {
    pub fn zero() -> Lnf {
        Lnf { terms: vec![] }
    }

    pub fn single(t: LnfTerm) -> Lnf {
        Lnf { terms: vec![t] }
    }

    /// `a` as a Λ-base form, for `a < Λ` in the main view.
    pub fn small(a: Term) -> Lnf {
        if a.is_zero() {
            Lnf::zero()
        } else {
            Lnf::single(LnfTerm::small(a))
        }
    }

    pub fn nat(n: u64) -> Lnf {
        Lnf::small(Term::nat(n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Read a term in either view.
    pub fn from_term(cx: &Ctx, t: &Term) -> Result<Lnf> {
        match t {
            Term::Zero => Ok(Lnf::zero()),
            Term::Theta(th) => Ok(Lnf::single(LnfTerm::new(th.iter.clone(), th.arg.clone(), th.coeff.clone()))),
            Term::Sum(ps) if t.is_lnf_view() => {
                let mut terms = Vec::with_capacity(ps.len());
                for p in ps.iter() {
                    match p {
                        Term::Theta(th) => terms.push(LnfTerm::new(th.iter.clone(), th.arg.clone(), th.coeff.clone())),
                        other => return Err(OrdError::domain(format!("mixed Λ-base sum part {other}"))),
                    }
                }
                Ok(Lnf { terms })
            }
            _ => arith::main_to_lnf(cx, t),
        }
    }

    pub fn to_term(&self) -> Term {
        match self.terms.len() {
            0 => Term::Zero,
            1 => self.terms[0].to_term(),
            _ => Term::Sum(self.terms.iter().map(LnfTerm::to_term).collect()),
        }
    }

    /// `hd(ξ)`, coefficient stripped.
    pub fn head(&self) -> Result<Lnf> {
        let t = self.terms.first().ok_or_else(|| OrdError::domain("head of zero"))?;
        Ok(Lnf::single(LnfTerm::new(t.iter.clone(), t.arg.clone(), Term::one())))
    }

    /// `tl(ξ)`, coefficient stripped.
    pub fn tail(&self) -> Result<Lnf> {
        let t = self.terms.last().ok_or_else(|| OrdError::domain("tail of zero"))?;
        Ok(Lnf::single(LnfTerm::new(t.iter.clone(), t.arg.clone(), Term::one())))
    }

    /// All initial sums, from `0` up to the whole form, in increasing order.
    pub fn segments(&self) -> Vec<Lnf> {
        (0..=self.terms.len())
            .map(|k| Lnf { terms: self.terms[..k].to_vec() })
            .collect()
    }

    /// `SC_Λ(ξ) = ⋃ ({a_i} ∪ SC_Λ(ξ_i))`, without duplicates.
    pub fn sc_lambda(&self) -> Vec<Term> {
        let mut out = Vec::new();
        self.collect_sc(&mut out);
        out
    }

    fn collect_sc(&self, out: &mut Vec<Term>) {
        for t in &self.terms {
            if !out.contains(&t.coeff) {
                out.push(t.coeff.clone());
            }
            if let Term::Theta(_) | Term::Sum(_) = t.arg {
                // arg is a Λ-base term; its view conversion cannot fail
                if let Some(inner) = lnf_of_view(&t.arg) {
                    inner.collect_sc(out);
                }
            }
        }
    }

    /// Ordinal sum `self + other`.
    pub fn add(&self, cx: &Ctx, other: &Lnf) -> Result<Lnf> {
        let Some(h) = other.terms.first() else {
            return Ok(self.clone());
        };
        let mut terms = Vec::new();
        for s in &self.terms {
            match cmp_theta(cx, s, h)? {
                Ordering::Greater => terms.push(s.clone()),
                Ordering::Equal => {
                    let coeff = arith::add(cx, &s.coeff, &h.coeff)?;
                    terms.push(LnfTerm::new(h.iter.clone(), h.arg.clone(), coeff));
                    terms.extend(other.terms[1..].iter().cloned());
                    return Ok(Lnf { terms });
                }
                Ordering::Less => break,
            }
        }
        terms.extend(other.terms.iter().cloned());
        Ok(Lnf { terms })
    }

    /// `ξ + 1`.
    pub fn succ(&self, cx: &Ctx) -> Result<Lnf> {
        self.add(cx, &Lnf::nat(1))
    }

    /// Left multiplication `ω·ξ`. Summands at or above `Λ` absorb the factor.
    pub fn omega_mul(&self, cx: &Ctx) -> Result<Lnf> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.is_small() {
                terms.push(LnfTerm::small(arith::omega_mul(cx, &t.coeff)?));
            } else {
                terms.push(t.clone());
            }
        }
        Ok(Lnf { terms })
    }

    /// `ξ·ω` for a single principal summand: the coefficient becomes `ω`.
    pub fn times_omega(&self) -> Result<Lnf> {
        match self.terms.as_slice() {
            [t] if t.coeff.is_one() => Ok(Lnf::single(LnfTerm::new(t.iter.clone(), t.arg.clone(), Term::omega_small()))),
            _ => Err(OrdError::domain("times_omega expects a single principal summand")),
        }
    }

    /// Whether `self` is a single summand with coefficient 1.
    pub fn as_principal(&self) -> Option<&LnfTerm> {
        match self.terms.as_slice() {
            [t] if t.coeff.is_one() => Some(t),
            _ => None,
        }
    }
}

fn lnf_of_view(t: &Term) -> Option<Lnf> {
    match t {
        Term::Zero => Some(Lnf::zero()),
        Term::Theta(th) => Some(Lnf::single(LnfTerm::new(th.iter.clone(), th.arg.clone(), th.coeff.clone()))),
        Term::Sum(ps) => ps
            .iter()
            .map(|p| match p {
                Term::Theta(th) => Some(LnfTerm::new(th.iter.clone(), th.arg.clone(), th.coeff.clone())),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(|terms| Lnf { terms }),
        _ => None,
    }
}

/// `θ̃_b(ξ)` for an arbitrary `b < Λ`: `θ̃_{p_1 + … + p_k} = θ̃_{p_1} ∘ … ∘ θ̃_{p_k}`
/// over the principal parts of `b`. Applications that would be fixed points
/// collapse to their argument, so the result is normal.
pub fn theta(cx: &Ctx, b: &Term, xi: &Lnf) -> Result<Lnf> {
    let mut y = xi.clone();
    for p in b.parts().iter().rev() {
        y = theta_principal(cx, p, &y)?;
    }
    Ok(y)
}

fn theta_principal(cx: &Ctx, p: &Term, y: &Lnf) -> Result<Lnf> {
    if let Some(t) = y.as_principal() {
        if cmp(cx, &t.iter, p)? == Ordering::Greater {
            return Ok(y.clone());
        }
    }
    Ok(Lnf::single(LnfTerm::new(p.clone(), y.to_term(), Term::one())))
}

/// `θ̃_b(ξ) > ξ`, the normality condition of a summand.
pub fn is_normal_theta(cx: &Ctx, b: &Term, xi: &Lnf) -> Result<bool> {
    let Some(h) = xi.terms.first() else {
        return Ok(true);
    };
    let me = LnfTerm::new(b.clone(), xi.to_term(), Term::one());
    let hd = LnfTerm::new(h.iter.clone(), h.arg.clone(), Term::one());
    Ok(cmp_theta(cx, &me, &hd)? == Ordering::Greater)
}

/// `θ̃_{-c}(ζ)` for a single summand `ζ = θ̃_b(ξ)` (its coefficient is ignored).
pub fn theta_minus(cx: &Ctx, c: &Term, zeta: &Lnf) -> Result<Lnf> {
    let t = match zeta.terms.as_slice() {
        [t] => t,
        _ => return Err(OrdError::domain("θ̃-minus needs a single θ̃-summand")),
    };
    let xi = Lnf::from_term(cx, &t.arg)?;
    if cmp(cx, &t.iter, c)? != Ordering::Less {
        let rest = arith::left_sub(cx, &t.iter, c)?;
        theta(cx, &rest, &xi)
    } else if xi.is_zero() {
        Ok(Lnf::zero())
    } else {
        let rest = arith::left_sub(cx, c, &t.iter)?;
        theta_minus(cx, &rest, &xi.head()?)
    }
}

/// Decompose a term below `φ_Λ(0)` into its Λ-base normal form.
pub fn lnf_decompose(t: &Term) -> Result<Lnf> {
    Lnf::from_term(&Ctx::default(), t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse_lnf;

    fn cx() -> Ctx {
        Ctx::default()
    }

    fn l(s: &str) -> Lnf {
        parse_lnf(s).unwrap()
    }

    #[test]
    fn decompose_examples() {
        assert!(l("0").is_zero());
        assert_eq!(l("1").terms, vec![LnfTerm::small(Term::one())]);
        let x = l("th(1,2)*3 + th(1,1)*2 + 1");
        let triples: Vec<_> = x.terms.iter().map(|t| (t.iter.as_nat(), t.arg.as_lnf_nat(), t.coeff.as_nat())).collect();
        assert_eq!(triples, vec![(Some(1), Some(2), Some(3)), (Some(1), Some(1), Some(2)), (Some(1), Some(0), Some(1))]);
    }

    #[test]
    fn head_tail_segments() {
        let x = l("th(1,2)*3 + th(1,1)*2 + 1");
        assert_eq!(x.head().unwrap(), l("th(1,2)"));
        assert_eq!(x.tail().unwrap(), l("1"));
        let segs = x.segments();
        assert_eq!(segs, vec![l("0"), l("th(1,2)*3"), l("th(1,2)*3 + th(1,1)*2"), x.clone()]);
        let one = l("th(phi(0,1),1)*5");
        assert_eq!(one.head().unwrap(), one.tail().unwrap());
        let y = l("L + 1");
        assert_eq!(y.head().unwrap(), l("th(1,1)"));
        assert_eq!(y.tail().unwrap(), l("1"));
        assert_eq!(l("0").segments(), vec![Lnf::zero()]);
        assert_eq!(l("2").segments(), vec![Lnf::zero(), l("2")]);
    }

    #[test]
    fn segments_strictly_increase() {
        let x = l("th(1,2)*3 + th(1,1)*2 + 1");
        let segs = x.segments();
        for w in segs.windows(2) {
            assert_eq!(
                crate::order::cmp_lnf(&cx(), &w[0], &w[1]).unwrap(),
                Ordering::Less
            );
        }
    }

    #[test]
    fn theta_minus_examples() {
        let c = cx();
        assert_eq!(theta_minus(&c, &Term::one(), &l("th(1,5)")).unwrap(), l("5"));
        assert_eq!(theta_minus(&c, &Term::omega_small(), &l("th(1,0)")).unwrap(), Lnf::zero());
        assert_eq!(theta_minus(&c, &Term::omega_small(), &l("th(1,1)")).unwrap(), Lnf::zero());
        // c below the iterate: θ̃_ω(ξ) is unchanged
        assert_eq!(theta_minus(&c, &Term::one(), &l("th(phi(0,1),1)")).unwrap(), l("th(phi(0,1),1)"));
        assert!(theta_minus(&c, &Term::one(), &l("L+1")).is_err());
    }

    #[test]
    fn sc_examples() {
        assert!(l("0").sc_lambda().is_empty());
        assert_eq!(l("1").sc_lambda(), vec![Term::one()]);
        assert_eq!(l("th(1, 3)*Om").sc_lambda(), vec![Term::Omega, Term::nat(3)]);
    }

    #[test]
    fn theta_composes_over_parts() {
        let c = cx();
        // θ̃_2(0) = Λ^{Λ^0} = Λ
        assert_eq!(theta(&c, &Term::nat(2), &Lnf::zero()).unwrap(), l("L"));
        // θ̃_1(θ̃_ω(0)) is a fixed point
        let w = l("th(phi(0,1), 0)");
        assert_eq!(theta(&c, &Term::one(), &w).unwrap(), w);
        assert!(!is_normal_theta(&c, &Term::one(), &w).unwrap());
        assert!(is_normal_theta(&c, &Term::one(), &l("5")).unwrap());
    }

    #[test]
    fn addition_absorbs() {
        let c = cx();
        assert_eq!(l("3").add(&c, &l("L")).unwrap(), l("L"));
        assert_eq!(l("th(1,1)*2 + 1").add(&c, &l("L")).unwrap(), l("th(1,1)*3"));
        assert_eq!(l("L").succ(&c).unwrap(), l("L+1"));
        assert_eq!(l("L + 1").omega_mul(&c).unwrap(), l("L + th(1,0)*phi(0,1)"));
    }
}

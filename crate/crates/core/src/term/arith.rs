//! Normal-form constructors and the small amount of main-view ordinal
//! arithmetic the measures need.

use std::cmp::Ordering;

use crate::error::{OrdError, Result};
use crate::order::{cmp, lt, Ctx};
use crate::term::lnf::{Lnf, LnfTerm};
use crate::term::Term;

/// Cantor normal form of `p_1 + … + p_n`: flattens sums, drops zeros and
/// absorbs every part that is smaller than a later one.
pub fn normalize_sum(cx: &Ctx, parts: &[Term]) -> Result<Term> {
    let mut stack: Vec<Term> = Vec::new();
    for p in parts.iter().flat_map(|t| t.parts().iter()) {
        if p.is_lnf_view() {
            return Err(OrdError::domain(format!("Λ-base term {p} inside a main-view sum")));
        }
        while let Some(top) = stack.last() {
            if cmp(cx, top, p)? == Ordering::Less {
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(p.clone());
    }
    Ok(from_parts(stack))
}

/// Assemble already-normal parts.
pub fn from_parts(mut parts: Vec<Term>) -> Term {
    match parts.len() {
        0 => Term::Zero,
        1 => parts.pop().unwrap(),
        _ => Term::Sum(parts.into()),
    }
}

/// `x + y`, in whichever view the operands are written.
pub fn add(cx: &Ctx, x: &Term, y: &Term) -> Result<Term> {
    if x.is_lnf_view() || y.is_lnf_view() {
        let s = Lnf::from_term(cx, x)?.add(cx, &Lnf::from_term(cx, y)?)?;
        return Ok(s.to_term());
    }
    normalize_sum(cx, &[x.clone(), y.clone()])
}

pub fn succ(cx: &Ctx, x: &Term) -> Result<Term> {
    add(cx, x, &Term::one())
}

/// `φ(a, b)` in normal form. Fixed points collapse: `φ(a, φ(c, d)) = φ(c, d)`
/// for `a < c`, and strongly critical atoms absorb smaller first arguments.
pub fn phi(cx: &Ctx, a: &Term, b: &Term) -> Result<Term> {
    match b {
        Term::Phi(c, _) if lt(cx, a, c)? => return Ok(b.clone()),
        _ if b.is_critical_atom() && lt(cx, a, b)? => return Ok(b.clone()),
        Term::Zero if a.is_critical_atom() => return Ok(a.clone()),
        _ => {}
    }
    Ok(Term::phi_raw(a.clone(), b.clone()))
}

/// `ω^e`.
pub fn omega_pow(cx: &Ctx, e: &Term) -> Result<Term> {
    phi(cx, &Term::Zero, e)
}

/// `α⁺`; `0⁺` is the atom `Ω`.
pub fn next_reg(x: &Term) -> Term {
    if x.is_zero() {
        Term::Omega
    } else {
        Term::reg_raw(x.clone())
    }
}

/// `ω_n(x)`: `n` applications of `ω^·`.
pub fn omega_tower(cx: &Ctx, n: u32, x: &Term) -> Result<Term> {
    let mut t = x.clone();
    for _ in 0..n {
        t = omega_pow(cx, &t)?;
    }
    Ok(t)
}

/// The exponent `l` of an additively principal `p = ω^l`.
pub fn log(p: &Term) -> Term {
    match p {
        Term::Phi(a, e) if a.is_zero() => (**e).clone(),
        other => other.clone(),
    }
}

/// `1 + x`.
pub fn one_plus(cx: &Ctx, x: &Term) -> Result<Term> {
    match x.as_nat() {
        Some(n) => Ok(Term::nat(n + 1)),
        None => normalize_sum(cx, &[Term::one(), x.clone()]),
    }
}

/// `ω·x`, by left distributivity over the parts of `x`.
pub fn omega_mul(cx: &Ctx, x: &Term) -> Result<Term> {
    let mut parts = Vec::with_capacity(x.parts().len());
    for p in x.parts() {
        parts.push(match p {
            Term::Phi(a, e) if a.is_zero() => omega_pow(cx, &one_plus(cx, e)?)?,
            other => other.clone(),
        });
    }
    Ok(from_parts(parts))
}

/// `ω^e·x`, by left distributivity: each part `ω^l` becomes `ω^{e+l}`.
pub fn mul_pow(cx: &Ctx, e: &Term, x: &Term) -> Result<Term> {
    let mut parts = Vec::with_capacity(x.parts().len());
    for p in x.parts() {
        parts.push(omega_pow(cx, &add(cx, e, &log(p))?)?);
    }
    normalize_sum(cx, &parts)
}

/// Left subtraction: the `z` with `y + z = x`, for `y ≤ x`.
pub fn left_sub(cx: &Ctx, x: &Term, y: &Term) -> Result<Term> {
    let (xs, ys) = (x.parts(), y.parts());
    for (i, q) in ys.iter().enumerate() {
        let Some(p) = xs.get(i) else {
            return Err(OrdError::domain(format!("left subtraction {x} - {y} with {y} > {x}")));
        };
        match cmp(cx, q, p)? {
            Ordering::Equal => continue,
            Ordering::Less => return Ok(from_parts(xs[i..].to_vec())),
            Ordering::Greater => {
                return Err(OrdError::domain(format!("left subtraction {x} - {y} with {y} > {x}")))
            }
        }
    }
    Ok(from_parts(xs[ys.len()..].to_vec()))
}

/// Λ-base normal form of a main-view term below `ε_{Λ+1}`.
///
/// Each part `ω^g` with `g = Λ·q + r` equals `Λ^q·ω^r`; consecutive parts with
/// the same `q` merge into one coefficient.
pub fn main_to_lnf(cx: &Ctx, x: &Term) -> Result<Lnf> {
    if x.is_zero() {
        return Ok(Lnf::zero());
    }
    if lt(cx, x, &Term::Lambda)? {
        return Ok(Lnf::small(x.clone()));
    }
    let mut groups: Vec<(Term, Vec<Term>)> = Vec::new();
    for p in x.parts() {
        let (q, c) = split_part(cx, p)?;
        match groups.last_mut() {
            Some((q0, cs)) if *q0 == q => cs.push(c),
            _ => groups.push((q, vec![c])),
        }
    }
    let mut terms = Vec::with_capacity(groups.len());
    for (q, cs) in groups {
        let arg = main_to_lnf(cx, &q)?.to_term();
        terms.push(LnfTerm::new(Term::one(), arg, normalize_sum(cx, &cs)?));
    }
    Ok(Lnf { terms })
}

/// `p = Λ^q·c` with `c < Λ`, for an additively principal `p`.
fn split_part(cx: &Ctx, p: &Term) -> Result<(Term, Term)> {
    if lt(cx, p, &Term::Lambda)? {
        return Ok((Term::Zero, p.clone()));
    }
    match p {
        Term::Lambda => Ok((Term::one(), Term::one())),
        Term::Phi(a, g) if a.is_zero() => {
            let mut q = Vec::new();
            let mut r = Vec::new();
            for h in g.parts() {
                let e = log(h);
                if lt(cx, &e, &Term::Lambda)? {
                    r.push(h.clone());
                } else {
                    // ω^{Λ+k} = Λ·ω^k
                    q.push(omega_pow(cx, &left_sub(cx, &e, &Term::Lambda)?)?);
                }
            }
            Ok((normalize_sum(cx, &q)?, omega_pow(cx, &from_parts(r))?))
        }
        _ => Err(OrdError::domain(format!("{p} is not below ε_(Λ+1)"))),
    }
}

/// Evaluate a Λ-base form with base `μ` in the main view:
/// `θ̃_1(ξ)·a ↦ μ^ξ·a = ω^{μ·ξ}·a`. Only iterate index 1 has a main-view value.
pub fn eval_lnf(cx: &Ctx, mu: &Term, x: &Lnf) -> Result<Term> {
    let mut parts = Vec::with_capacity(x.terms.len());
    for t in &x.terms {
        if !t.iter.is_one() {
            return Err(OrdError::domain(format!("θ̃ with iterate {} has no main-view value", t.iter)));
        }
        let v = eval_lnf(cx, mu, &Lnf::from_term(cx, &t.arg)?)?;
        let e = mul_pow(cx, mu, &v)?;
        parts.push(mul_pow(cx, &e, &t.coeff)?);
    }
    normalize_sum(cx, &parts)
}

/// Whether `x` is an epsilon number: a strongly critical atom or `φ(k, y)` with `k > 0`.
pub fn is_epsilon(x: &Term) -> bool {
    x.is_critical_atom() || matches!(x, Term::Phi(a, _) if !a.is_zero())
}

/// The least epsilon number strictly above `x`.
pub fn next_eps(cx: &Ctx, x: &Term) -> Result<Term> {
    match largest_eps_le(x) {
        None => Ok(Term::phi_raw(Term::one(), Term::Zero)),
        Some(e) => {
            let idx = match &e {
                Term::Phi(a, y) if a.is_one() => (**y).clone(),
                other => other.clone(),
            };
            phi(cx, &Term::one(), &succ(cx, &idx)?)
        }
    }
}

/// The largest epsilon number `≤ x`, read off the normal form.
fn largest_eps_le(x: &Term) -> Option<Term> {
    let head = x.parts().first()?;
    if is_epsilon(head) {
        return Some(head.clone());
    }
    match head {
        Term::Phi(_, e) => largest_eps_le(e),
        _ => None,
    }
}

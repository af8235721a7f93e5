//! Seeded random generators for finite functions, Λ-base values and the
//! precondition tuples of the lemma drivers.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::order::{cmp, cmp_lnf, is_irreducible, lt_lex, lt_under, max_of, Ctx};
use crate::term::arith::{left_sub, next_eps};
use crate::term::lnf::{theta, Lnf};
use crate::term::{FiniteFn, Term};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Shape of the random values.
#[derive(Clone, Copy, Debug)]
pub struct ValueShape {
    pub depth: u32,
    pub max_summands: usize,
    pub max_key: u64,
    pub max_points: usize,
    /// Probability of the iterate `ω`; other iterates are 1, 2 or 3.
    pub omega_iter: f64,
}

impl Default for ValueShape {
    fn default() -> Self {
        ValueShape { depth: 2, max_summands: 3, max_key: 4, max_points: 3, omega_iter: 0.0 }
    }
}

/// A random Λ-base value obeying the coefficient discipline.
pub fn random_lnf(cx: &Ctx, r: &mut Rng8, shape: &ValueShape) -> Result<Lnf> {
    random_lnf_at(cx, r, shape, shape.depth)
}

fn random_lnf_at(cx: &Ctx, r: &mut Rng8, shape: &ValueShape, depth: u32) -> Result<Lnf> {
    let n = r.gen_range(1..=shape.max_summands);
    let mut out = Lnf::zero();
    for _ in 0..n {
        let summand = if depth == 0 || r.gen_bool(0.3) {
            Lnf::nat(r.gen_range(1..=3))
        } else {
            let iter = if r.gen_bool(shape.omega_iter) { Term::omega_small() } else { Term::nat(r.gen_range(1..=3)) };
            let arg = if r.gen_bool(0.6) { random_lnf_at(cx, r, shape, depth - 1)? } else { Lnf::zero() };
            theta(cx, &iter, &arg)?
        };
        out = out.add(cx, &summand)?;
    }
    Ok(discipline(out))
}

/// Reset coefficients so that only a final summand of iterate 1 keeps one.
fn discipline(mut l: Lnf) -> Lnf {
    let n = l.terms.len();
    for (i, t) in l.terms.iter_mut().enumerate() {
        if (i + 1 != n || !t.iter.is_one()) && !t.is_small() {
            t.coeff = Term::one();
        }
    }
    l
}

/// A random irreducible finite function with natural keys. Retries until an
/// irreducible one turns up.
pub fn random_fn(cx: &Ctx, r: &mut Rng8, shape: &ValueShape, min_points: usize) -> Result<FiniteFn> {
    loop {
        let n = r.gen_range(min_points..=shape.max_points.max(min_points));
        let mut keys: Vec<u64> = (0..=shape.max_key).collect();
        keys.shuffle(r);
        keys.truncate(n);
        let mut entries = Vec::new();
        for k in keys {
            entries.push((Term::nat(k), random_lnf(cx, r, shape)?.to_term()));
        }
        let f = FiniteFn::new(cx, entries)?;
        if f.len() >= min_points && is_irreducible(cx, &f)? {
            return Ok(f);
        }
    }
}

/// A random value strictly below `bound`, or `None` after a few attempts.
fn random_below(cx: &Ctx, r: &mut Rng8, shape: &ValueShape, bound: &Lnf) -> Result<Option<Lnf>> {
    for _ in 0..20 {
        let v = if r.gen_bool(0.2) { Lnf::zero() } else { random_lnf(cx, r, shape)? };
        if cmp_lnf(cx, &v, bound)? == Ordering::Less {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

fn nat_of(t: &Term) -> u64 {
    t.as_nat().expect("generated keys are natural numbers")
}

/// A pair `(f, g)` meeting the step-down preconditions: `f_c = g_c`,
/// `c < d ∈ supp(g)` with no support of either in between,
/// `f(c) < g(c) + θ̃_{d-c}(g(d))·ω`, `f <^d g(d)`, both irreducible.
pub fn step_down_pair(cx: &Ctx, r: &mut Rng8, shape: &ValueShape) -> Result<Option<(FiniteFn, FiniteFn)>> {
    let g = random_fn(cx, r, shape, 1)?;
    let keys = g.support();
    let di = r.gen_range(0..keys.len());
    let d = nat_of(&keys[di]);
    if d == 0 {
        return Ok(None);
    }
    let lo = if di > 0 { nat_of(&keys[di - 1]) } else { 0 };
    let c = r.gen_range(lo..d);
    let (ct, dt) = (Term::nat(c), Term::nat(d));
    let gc = g.get_lnf(cx, &ct)?;
    let gd = g.get_lnf(cx, &dt)?;
    let th = theta(cx, &left_sub(cx, &dt, &ct)?, &gd)?;
    let bound = gc.add(cx, &th.times_omega()?)?;
    // f(c): either a random value below the bound or g(c) + θ̃·n + tail
    let fc = if r.gen_bool(0.5) {
        let mut v = gc.clone();
        for _ in 0..r.gen_range(0..3) {
            v = v.add(cx, &th)?;
        }
        let tail = random_lnf(cx, r, shape)?;
        let v = discipline(v.add(cx, &tail)?);
        if cmp_lnf(cx, &v, &bound)? != Ordering::Less {
            return Ok(None);
        }
        v
    } else {
        match random_below(cx, r, shape, &bound)? {
            Some(v) => v,
            None => return Ok(None),
        }
    };
    let mut entries: Vec<(Term, Term)> = g.split(cx, &ct)?.0.entries().to_vec();
    entries.push((ct.clone(), fc.to_term()));
    // at or above d: a smaller value at d and possibly more points above
    if let Some(v) = random_below(cx, r, shape, &gd)? {
        entries.push((dt.clone(), v.to_term()));
    }
    for k in d + 1..=shape.max_key {
        if r.gen_bool(0.3) {
            entries.push((Term::nat(k), random_lnf(cx, r, shape)?.to_term()));
        }
    }
    let f = FiniteFn::new(cx, entries)?;
    if !is_irreducible(cx, &f)? || !f.coefficients_ok(cx)? || !lt_under(cx, &f, &dt, &gd)? {
        return Ok(None);
    }
    Ok(Some((f, g)))
}

/// Two irreducible functions, ordered so that `f <⁰_lx g`.
pub fn lex_pair(cx: &Ctx, r: &mut Rng8, shape: &ValueShape) -> Result<Option<(FiniteFn, FiniteFn)>> {
    let a = random_fn(cx, r, shape, 0)?;
    let b = if r.gen_bool(0.5) {
        random_fn(cx, r, shape, 0)?
    } else {
        // a near neighbour: one value replaced
        let Some((k, _)) = a.entries().choose(r).cloned() else {
            return Ok(None);
        };
        let v = random_lnf(cx, r, shape)?;
        let b = a.with(cx, &k, &v)?;
        if !is_irreducible(cx, &b)? {
            return Ok(None);
        }
        b
    };
    if lt_lex(cx, &a, &b, &Term::Zero)? {
        Ok(Some((a, b)))
    } else if lt_lex(cx, &b, &a, &Term::Zero)? {
        Ok(Some((b, a)))
    } else {
        Ok(None)
    }
}

/// An epsilon number `μ < Λ` above `SC_Λ(f, g)`.
pub fn epsilon_above(cx: &Ctx, r: &mut Rng8, f: &FiniteFn, g: &FiniteFn) -> Result<Term> {
    let mut sc = f.sc_lambda();
    sc.extend(g.sc_lambda());
    let top = max_of(cx, &sc)?.unwrap_or(Term::Zero);
    let mut mu = next_eps(cx, &top)?;
    for _ in 0..r.gen_range(0..3) {
        mu = next_eps(cx, &mu)?;
    }
    if r.gen_bool(0.3) {
        let big = Term::phi_raw(Term::one(), crate::term::arith::succ(cx, &Term::Stable)?);
        if cmp(cx, &big, &mu)? == Ordering::Greater {
            mu = big;
        }
    }
    Ok(mu)
}

/// `(f, c, ξ, ζ)` with `f <^c ξ` and `ξ ≤ ζ`.
pub fn idless_tuple(cx: &Ctx, r: &mut Rng8, shape: &ValueShape) -> Result<Option<(FiniteFn, Term, Lnf, Lnf)>> {
    let f = random_fn(cx, r, shape, 1)?;
    let keys = f.support();
    let c = if r.gen_bool(0.8) { keys.choose(r).expect("non-empty").clone() } else { Term::nat(r.gen_range(0..=shape.max_key)) };
    // ξ: f(c) plus something, which tends to satisfy f <^c ξ
    let fc = f.get_lnf(cx, &c)?;
    let bump = random_lnf(cx, r, shape)?;
    let xi = if r.gen_bool(0.5) { discipline(fc.add(cx, &bump)?) } else { bump };
    if !lt_under(cx, &f, &c, &xi)? {
        return Ok(None);
    }
    let zeta = if r.gen_bool(0.2) {
        xi.clone()
    } else if r.gen_bool(0.5) {
        xi.add(cx, &random_lnf(cx, r, shape)?)?
    } else {
        random_lnf(cx, r, shape)?
    };
    if cmp_lnf(cx, &xi, &zeta)? == Ordering::Greater {
        return Ok(None);
    }
    Ok(Some((f, c, xi, zeta)))
}

//! The comparator and the relations and measures that drive it.
//!
//! Every operation takes a [`Ctx`]. The default context is the real
//! comparator; the harness swaps in a [`Mutation`] to check that the property
//! suite notices a broken case.

pub mod measure;
pub mod relations;

use std::cell::{Cell, RefCell};
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{OrdError, Result};
use crate::hull::in_hull;
use crate::term::lnf::{Lnf, LnfTerm};
use crate::term::Term;

pub use measure::{a_measure, o_measure, o_measure_mu, Measure};
pub use relations::{is_irreducible, lt_lex, lt_lex_unchecked, lt_under};
pub use std::cmp::Ordering as ComparisonOutcome;
use std::cmp::Ordering;

/// A deliberately wrong comparator case, used for mutation testing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mutation {
    /// `φ(a,b)` vs `φ(c,d)` with `a < c`: the answer of `b` vs `φ(c,d)` is inverted.
    VeblenSwap,
    /// Collapsing terms, case `b < a`: the hull side condition is not checked.
    PsiDropHull,
    /// `θ̃_b(ξ)` vs `θ̃_c(η)` with `b < c`: the answer of `ξ` vs `θ̃_c(η)` is inverted.
    ThetaFlip,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [Mutation::VeblenSwap, Mutation::PsiDropHull, Mutation::ThetaFlip];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::VeblenSwap => "veblen-swap",
            Mutation::PsiDropHull => "psi-drop-hull",
            Mutation::ThetaFlip => "theta-flip",
        }
    }

    pub fn from_name(s: &str) -> Option<Mutation> {
        Mutation::ALL.into_iter().find(|m| m.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ctx {
    pub mutation: Option<Mutation>,
    pub depth_limit: u32,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx { mutation: None, depth_limit: 4096 }
    }
}

impl Ctx {
    pub fn with_mutation(m: Mutation) -> Ctx {
        Ctx { mutation: Some(m), ..Ctx::default() }
    }

    fn mutated(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }
}

const MEMO_CAP: usize = 1 << 20;

type Memo = HashMap<(Term, Term, Option<Mutation>), Ordering>;

thread_local! {
    static DEPTH: Cell<u32> = const { Cell::new(0) };
    static MEMO: RefCell<Memo> = RefCell::new(HashMap::new());
}

struct DepthGuard;

impl DepthGuard {
    fn enter(limit: u32) -> Result<DepthGuard> {
        DEPTH.with(|d| {
            let v = d.get() + 1;
            if v > limit {
                return Err(OrdError::DepthExceeded(limit));
            }
            d.set(v);
            Ok(DepthGuard)
        })
    }
}

impl Drop for DepthGuard {
    fn drop(&mut self) {
        DEPTH.with(|d| d.set(d.get() - 1));
    }
}

/// Compare two terms with the standard comparator.
pub fn compare(x: &Term, y: &Term) -> Result<Ordering> {
    cmp(&Ctx::default(), x, y)
}

pub fn lt(cx: &Ctx, x: &Term, y: &Term) -> Result<bool> {
    Ok(cmp(cx, x, y)? == Ordering::Less)
}

pub fn le(cx: &Ctx, x: &Term, y: &Term) -> Result<bool> {
    Ok(cmp(cx, x, y)? != Ordering::Greater)
}

/// Decide the order of two canonical terms.
///
/// Sums compare part by part. Principal main-view terms use the Veblen rules,
/// with regulars and collapsing terms acting as strongly critical atoms.
/// Collapsing terms compare by the six-case analysis, which consults hull
/// membership and `<_lx`. Λ-base terms compare triple by triple.
pub fn cmp(cx: &Ctx, x: &Term, y: &Term) -> Result<Ordering> {
    if x == y {
        return Ok(Ordering::Equal);
    }
    let _guard = DepthGuard::enter(cx.depth_limit)?;
    if x.is_lnf_view() || y.is_lnf_view() {
        let lx = Lnf::from_term(cx, x)?;
        let ly = Lnf::from_term(cx, y)?;
        return cmp_lnf(cx, &lx, &ly);
    }
    let (xs, ys) = (x.parts(), y.parts());
    for (p, q) in xs.iter().zip(ys) {
        match cmp_principal(cx, p, q)? {
            Ordering::Equal => continue,
            o => return Ok(o),
        }
    }
    Ok(xs.len().cmp(&ys.len()))
}

fn cmp_principal(cx: &Ctx, p: &Term, q: &Term) -> Result<Ordering> {
    if p == q {
        return Ok(Ordering::Equal);
    }
    match (p, q) {
        (Term::Phi(a1, b1), Term::Phi(a2, b2)) => match cmp(cx, a1, a2)? {
            Ordering::Equal => cmp(cx, b1, b2),
            Ordering::Less => {
                let o = cmp(cx, b1, q)?;
                Ok(if cx.mutated(Mutation::VeblenSwap) { o.reverse() } else { o })
            }
            Ordering::Greater => cmp(cx, p, b2),
        },
        (Term::Phi(a, b), atom) if atom.is_critical_atom() => {
            if lt(cx, a, atom)? && lt(cx, b, atom)? {
                Ok(Ordering::Less)
            } else {
                Ok(Ordering::Greater)
            }
        }
        (atom, Term::Phi(..)) if atom.is_critical_atom() => Ok(cmp_principal(cx, q, p)?.reverse()),
        (a, b) if a.is_critical_atom() && b.is_critical_atom() => cmp_atoms(cx, a, b),
        _ => Err(OrdError::precondition(format!("cannot compare {p} with {q} as principal terms"))),
    }
}

fn regular_rank(t: &Term) -> u8 {
    match t {
        Term::Omega => 0,
        Term::NextReg(_) => 1,
        Term::Stable => 2,
        Term::Lambda => 3,
        _ => unreachable!("not a non-collapsing regular"),
    }
}

fn cmp_atoms(cx: &Ctx, a: &Term, b: &Term) -> Result<Ordering> {
    match (a, b) {
        (Term::Psi(_), Term::Psi(_)) => memo(cx, a, b, psi_vs_psi),
        (Term::Psi(_), k) => psi_vs_regular(cx, a, k),
        (k, Term::Psi(_)) => Ok(psi_vs_regular(cx, b, k)?.reverse()),
        (Term::NextReg(x), Term::NextReg(y)) => cmp(cx, x, y),
        _ => Ok(regular_rank(a).cmp(&regular_rank(b))),
    }
}

fn memo(cx: &Ctx, a: &Term, b: &Term, f: fn(&Ctx, &Term, &Term) -> Result<Ordering>) -> Result<Ordering> {
    let key = (a.clone(), b.clone(), cx.mutation);
    if let Some(o) = MEMO.with(|m| m.borrow().get(&key).copied()) {
        return Ok(o);
    }
    let o = f(cx, a, b)?;
    MEMO.with(|m| {
        let mut m = m.borrow_mut();
        if m.len() >= MEMO_CAP {
            m.clear();
        }
        m.insert(key, o);
    });
    Ok(o)
}

/// `ψ_π^f(b)` against a regular `κ` that is not itself a collapsing term.
fn psi_vs_regular(cx: &Ctx, psi_term: &Term, kappa: &Term) -> Result<Ordering> {
    let p = psi_term.as_psi().expect("collapsing term");
    if le(cx, &p.sub, kappa)? {
        return Ok(Ordering::Less);
    }
    // κ < π: κ lies below the collapse iff it belongs to its hull
    let inside = match kappa {
        Term::NextReg(x) => in_hull(cx, x, &p.idx, psi_term)?,
        _ => true,
    };
    Ok(if inside { Ordering::Greater } else { Ordering::Less })
}

fn psi_vs_psi(cx: &Ctx, x: &Term, y: &Term) -> Result<Ordering> {
    let less = psi_less(cx, x, y)?;
    let greater = psi_less(cx, y, x)?;
    match (less, greater) {
        (true, false) => Ok(Ordering::Less),
        (false, true) => Ok(Ordering::Greater),
        (true, true) => Err(OrdError::NotExhaustive(format!("both {x} < {y} and {y} < {x} hold"))),
        (false, false) => Err(OrdError::NotExhaustive(format!("neither {x} < {y} nor {y} < {x} holds"))),
    }
}

fn all_in_hull(cx: &Ctx, ts: &[Term], a: &Term, beta: &Term) -> Result<bool> {
    for t in ts {
        if !in_hull(cx, t, a, beta)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ψ_π^f(b) < ψ_κ^g(a)` by the six cases.
fn psi_less(cx: &Ctx, alpha: &Term, beta: &Term) -> Result<bool> {
    let (l, r) = (alpha.as_psi().unwrap(), beta.as_psi().unwrap());
    let (pi, f, b) = (&l.sub, &l.func, &l.idx);
    let (kappa, g, a) = (&r.sub, &r.func, &r.idx);

    // 1. π ≤ ψ_κ^g(a)
    if le(cx, pi, beta)? {
        return Ok(true);
    }
    let sc_f = f.sc_lambda();
    let sc_g = g.sc_lambda();
    match cmp(cx, b, a)? {
        Ordering::Less => {
            // 2. ψ_π^f(b) < κ and SC(f) ∪ {π, b} ⊂ H_a(ψ_κ^g(a))
            if !lt(cx, alpha, kappa)? {
                return Ok(false);
            }
            if cx.mutated(Mutation::PsiDropHull) {
                return Ok(true);
            }
            let mut ts = sc_f;
            ts.push(pi.clone());
            ts.push(b.clone());
            all_in_hull(cx, &ts, a, beta)
        }
        Ordering::Greater => {
            // 3. SC(g) ∪ {κ, a} ⊄ H_b(ψ_π^f(b))
            let mut ts = sc_g;
            ts.push(kappa.clone());
            ts.push(a.clone());
            Ok(!all_in_hull(cx, &ts, b, alpha)?)
        }
        Ordering::Equal => match cmp(cx, kappa, pi)? {
            // 4. κ < π and κ ∉ H_b(ψ_π^f(b))
            Ordering::Less => Ok(!in_hull(cx, kappa, b, alpha)?),
            Ordering::Greater => Ok(false),
            Ordering::Equal => {
                // 6. SC(g) ⊄ H_b(ψ_π^f(b))
                if !all_in_hull(cx, &sc_g, b, alpha)? {
                    return Ok(true);
                }
                // 5. SC(f) ⊂ H_a(ψ_κ^g(a)) and f <⁰_lx g
                Ok(all_in_hull(cx, &sc_f, a, beta)? && lt_lex_unchecked(cx, f, g, &Term::Zero)?)
            }
        },
    }
}

/// Lexicographic comparison of Λ-base normal forms.
pub fn cmp_lnf(cx: &Ctx, x: &Lnf, y: &Lnf) -> Result<Ordering> {
    for (s, t) in x.terms.iter().zip(&y.terms) {
        match cmp_theta(cx, s, t)? {
            Ordering::Equal => {}
            o => return Ok(o),
        }
        match cmp(cx, &s.coeff, &t.coeff)? {
            Ordering::Equal => {}
            o => return Ok(o),
        }
    }
    Ok(x.terms.len().cmp(&y.terms.len()))
}

/// Compare the principal parts `θ̃_b(ξ)` and `θ̃_c(η)`, coefficients ignored.
///
/// With `b < c` both ω-powers, `c = b + c`, so `θ̃_c(η) = θ̃_b(θ̃_c(η))` and
/// monotonicity of `θ̃_b` reduces the question to `ξ` against `θ̃_c(η)`.
pub fn cmp_theta(cx: &Ctx, s: &LnfTerm, t: &LnfTerm) -> Result<Ordering> {
    if s.iter == t.iter && s.arg == t.arg {
        return Ok(Ordering::Equal);
    }
    let _guard = DepthGuard::enter(cx.depth_limit)?;
    match cmp(cx, &s.iter, &t.iter)? {
        Ordering::Equal => cmp(cx, &s.arg, &t.arg),
        Ordering::Less => {
            let o = cmp(cx, &s.arg, &t.principal())?;
            Ok(if cx.mutated(Mutation::ThetaFlip) { o.reverse() } else { o })
        }
        Ordering::Greater => cmp(cx, &s.principal(), &t.arg),
    }
}

/// Largest of a list of terms under the comparator; `None` for the empty list.
pub fn max_of(cx: &Ctx, ts: &[Term]) -> Result<Option<Term>> {
    let mut best: Option<&Term> = None;
    for t in ts {
        best = match best {
            Some(b) if !lt(cx, b, t)? => Some(b),
            _ => Some(t),
        };
    }
    Ok(best.cloned())
}

/// Sort ascending and remove duplicates.
pub fn sort_dedup(cx: &Ctx, ts: &mut Vec<Term>) -> Result<()> {
    let mut err = None;
    let mut le = |a: &Term, b: &Term| match cmp(cx, a, b) {
        Ok(o) => o != Ordering::Greater,
        Err(e) => {
            err.get_or_insert(e);
            true
        }
    };
    *ts = merge_sort(std::mem::take(ts), &mut le);
    if let Some(e) = err {
        return Err(e);
    }
    ts.dedup();
    Ok(())
}

/// A stable merge sort. Unlike the std sorts it never panics when a mutated
/// comparator is not a total order.
fn merge_sort(mut v: Vec<Term>, le: &mut impl FnMut(&Term, &Term) -> bool) -> Vec<Term> {
    if v.len() <= 1 {
        return v;
    }
    let right = v.split_off(v.len() / 2);
    let (a, b) = (merge_sort(v, le), merge_sort(right, le));
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut a, mut b) = (a.into_iter().peekable(), b.into_iter().peekable());
    while let (Some(x), Some(y)) = (a.peek(), b.peek()) {
        let next = if le(x, y) { a.next() } else { b.next() };
        out.extend(next);
    }
    out.extend(a);
    out.extend(b);
    out
}

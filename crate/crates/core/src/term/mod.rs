//! The term algebra: ordinal terms, Λ-base normal forms and finite functions.
//!
//! Terms live in two views. The *main* view covers the notation system proper
//! (`0`, `Ω`, `S`, `S⁺`, sums, binary Veblen terms, successor-regulars and
//! collapsing terms). The *Λ-base* view writes an ordinal below `φ_Λ(0)` as a
//! descending sum of `θ̃_b(ξ)·a`; it is used for finite-function values and for
//! the measures `a(ξ)` and `o(f)`. Ordinals below `Λ` appear in the Λ-base view
//! as `θ̃_1(0)·a`.

pub mod arith;
pub mod finfn;
pub mod lnf;

use std::fmt;
use std::sync::Arc;

pub use finfn::FiniteFn;
pub use lnf::Lnf;

/// An ordinal term.
///
/// Structural equality coincides with ordinal equality on canonical terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    /// `Ω`, the first regular above `ω`; also the canonical spelling of `0⁺`.
    Omega,
    /// `S`, the stable ordinal.
    Stable,
    /// `S⁺`, written `Λ` or `L`.
    Lambda,
    /// Canonical sum: at least two additively principal parts, weakly decreasing.
    /// Inside the Λ-base view the parts are `Theta` nodes, strictly decreasing
    /// in their principal `θ̃_b(ξ)`.
    Sum(Arc<[Term]>),
    /// `φ(a, b)`, the binary Veblen function.
    Phi(Arc<Term>, Arc<Term>),
    /// `α⁺`, the next regular above `α < S`.
    NextReg(Arc<Term>),
    /// `ψ_π^f(a)`.
    Psi(Arc<Psi>),
    /// `θ̃_b(ξ)·a`.
    Theta(Arc<Theta>),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Psi {
    pub sub: Term,
    pub func: FiniteFn,
    pub idx: Term,
}

/// `θ̃_iter(arg)·coeff`. `iter` and `coeff` are main-view terms below `Λ`,
/// `arg` is a Λ-base term.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Theta {
    pub iter: Term,
    pub arg: Term,
    pub coeff: Term,
}

impl Term {
    pub fn one() -> Term {
        Term::Phi(Arc::new(Term::Zero), Arc::new(Term::Zero))
    }

    /// The natural number `n` in the main view.
    pub fn nat(n: u64) -> Term {
        match n {
            0 => Term::Zero,
            1 => Term::one(),
            _ => Term::Sum((0..n).map(|_| Term::one()).collect()),
        }
    }

    /// `ω = φ(0, 1)`.
    pub fn omega_small() -> Term {
        Term::phi_raw(Term::Zero, Term::one())
    }

    pub fn phi_raw(a: Term, b: Term) -> Term {
        Term::Phi(Arc::new(a), Arc::new(b))
    }

    pub fn psi_raw(sub: Term, func: FiniteFn, idx: Term) -> Term {
        Term::Psi(Arc::new(Psi { sub, func, idx }))
    }

    pub fn theta_raw(iter: Term, arg: Term, coeff: Term) -> Term {
        Term::Theta(Arc::new(Theta { iter, arg, coeff }))
    }

    pub fn reg_raw(arg: Term) -> Term {
        Term::NextReg(Arc::new(arg))
    }

    /// The natural number `n` in the Λ-base view: `θ̃_1(0)·n`.
    pub fn lnf_nat(n: u64) -> Term {
        if n == 0 {
            Term::Zero
        } else {
            Term::theta_raw(Term::one(), Term::Zero, Term::nat(n))
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Term::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Term::Phi(a, b) if a.is_zero() && b.is_zero())
    }

    /// Sum parts, or the term itself as a one-element slice.
    pub fn parts(&self) -> &[Term] {
        match self {
            Term::Zero => &[],
            Term::Sum(ps) => ps,
            other => std::slice::from_ref(other),
        }
    }

    /// `Some(n)` when the term is a main-view natural number.
    pub fn as_nat(&self) -> Option<u64> {
        if self.is_zero() {
            return Some(0);
        }
        let ps = self.parts();
        if ps.iter().all(Term::is_one) {
            Some(ps.len() as u64)
        } else {
            None
        }
    }

    /// `Some(n)` when the term is `θ̃_1(0)·n` for a natural `n` (or zero).
    pub fn as_lnf_nat(&self) -> Option<u64> {
        match self {
            Term::Zero => Some(0),
            Term::Theta(t) if t.iter.is_one() && t.arg.is_zero() => t.coeff.as_nat(),
            _ => None,
        }
    }

    /// Whether this term is written in the Λ-base view.
    pub fn is_lnf_view(&self) -> bool {
        match self {
            Term::Theta(_) => true,
            Term::Sum(ps) => ps.first().is_some_and(|p| matches!(p, Term::Theta(_))),
            _ => false,
        }
    }

    /// Additively principal in the main view: anything but `0` and sums.
    pub fn is_principal(&self) -> bool {
        !matches!(self, Term::Zero | Term::Sum(_))
    }

    /// Strongly critical atoms: regulars and collapsing terms. These are
    /// fixed points of every `φ(x, ·)` with `x` below them.
    pub fn is_critical_atom(&self) -> bool {
        matches!(
            self,
            Term::Omega | Term::Stable | Term::Lambda | Term::NextReg(_) | Term::Psi(_)
        )
    }

    pub fn as_psi(&self) -> Option<&Psi> {
        match self {
            Term::Psi(p) => Some(p),
            _ => None,
        }
    }

    /// Term size: atoms count 1, each former adds 1, and a sum counts only its
    /// parts, so the numeral `n` has size `n`.
    pub fn node_count(&self) -> usize {
        if let Some(n) = self.as_nat().filter(|&n| n > 0) {
            return n as usize;
        }
        if let Some(n) = self.as_lnf_nat().filter(|&n| n > 0) {
            return n as usize;
        }
        match self {
            Term::Zero | Term::Omega | Term::Stable | Term::Lambda => 1,
            // a sum is a flat list of its parts
            Term::Sum(ps) => ps.iter().map(Term::node_count).sum(),
            Term::Phi(a, b) => 1 + a.node_count() + b.node_count(),
            Term::NextReg(a) => 1 + a.node_count(),
            Term::Psi(p) => 1 + p.sub.node_count() + p.idx.node_count() + p.func.node_count(),
            // a small value prints as its coefficient
            Term::Theta(t) if t.iter.is_one() && t.arg.is_zero() => t.coeff.node_count(),
            Term::Theta(t) => {
                let coeff = if t.coeff.is_one() { 0 } else { t.coeff.node_count() };
                1 + t.iter.node_count() + t.arg.node_count() + coeff
            }
        }
    }

    /// Immediate subterms (components), including finite-function keys and values.
    pub fn children(&self) -> Vec<Term> {
        match self {
            Term::Zero | Term::Omega | Term::Stable | Term::Lambda => vec![],
            Term::Sum(ps) => ps.to_vec(),
            Term::Phi(a, b) => vec![(**a).clone(), (**b).clone()],
            Term::NextReg(a) => vec![(**a).clone()],
            Term::Psi(p) => {
                let mut v = vec![p.sub.clone(), p.idx.clone()];
                for (k, x) in p.func.entries() {
                    v.push(k.clone());
                    v.push(x.clone());
                }
                v
            }
            Term::Theta(t) => vec![t.iter.clone(), t.arg.clone(), t.coeff.clone()],
        }
    }

    /// All subterms, this term included, in pre-order.
    pub fn subterms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        let mut stack = vec![self.clone()];
        while let Some(t) = stack.pop() {
            let ch = t.children();
            out.push(t);
            stack.extend(ch.into_iter().rev());
        }
        out
    }

    /// Follow the subscript position of collapsing terms until it is no
    /// longer a collapsing term; returns that final subscript.
    pub fn subscript_root(&self) -> Option<&Term> {
        let mut cur = self.as_psi()?;
        loop {
            match &cur.sub {
                Term::Psi(p) => cur = p,
                other => return Some(other),
            }
        }
    }

    /// Membership in `Ψ_S`: a collapsing term whose subscript chain ends at `S`.
    pub fn in_psi_s(&self) -> bool {
        matches!(self.subscript_root(), Some(Term::Stable))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::textio::print(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textio::print(self))
    }
}

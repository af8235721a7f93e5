//! Finite functions `c ↦ f(c)` with finite support below `Λ`.

use std::cmp::Ordering;

use crate::error::{OrdError, Result};
use crate::order::{cmp, Ctx};
use crate::term::lnf::Lnf;
use crate::term::Term;

/// Entries are kept in strictly increasing key order; values are non-zero
/// terms in the Λ-base view.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FiniteFn {
    entries: Vec<(Term, Term)>,
}

impl FiniteFn {
    pub fn empty() -> FiniteFn {
        FiniteFn { entries: vec![] }
    }

    /// Build from unordered entries. Values are brought into the Λ-base view,
    /// zero values are dropped, and repeated keys are rejected.
    pub fn new(cx: &Ctx, entries: Vec<(Term, Term)>) -> Result<FiniteFn> {
        let mut out = Vec::with_capacity(entries.len());
        for (k, v) in entries {
            let v = Lnf::from_term(cx, &v)?.to_term();
            if !v.is_zero() {
                out.push((k, v));
            }
        }
        // insertion sort: supports are small, and a mutated comparator must not panic
        for i in 1..out.len() {
            let mut j = i;
            while j > 0 && cmp(cx, &out[j - 1].0, &out[j].0)? == Ordering::Greater {
                out.swap(j - 1, j);
                j -= 1;
            }
        }
        if out.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(OrdError::domain("finite function has a repeated key"));
        }
        Ok(FiniteFn { entries: out })
    }

    /// Build from entries already sorted, with Λ-base non-zero values.
    pub(crate) fn from_sorted(entries: Vec<(Term, Term)>) -> FiniteFn {
        FiniteFn { entries }
    }

    pub fn entries(&self) -> &[(Term, Term)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn support(&self) -> Vec<Term> {
        self.entries.iter().map(|(k, _)| k.clone()).collect()
    }

    /// `f(c)`, zero off the support.
    pub fn get(&self, c: &Term) -> Term {
        self.entries
            .iter()
            .find(|(k, _)| k == c)
            .map(|(_, v)| v.clone())
            .unwrap_or(Term::Zero)
    }

    pub fn get_lnf(&self, cx: &Ctx, c: &Term) -> Result<Lnf> {
        Lnf::from_term(cx, &self.get(c))
    }

    /// `f` with `f(c)` replaced by `v`; a zero `v` removes `c` from the support.
    pub fn with(&self, cx: &Ctx, c: &Term, v: &Lnf) -> Result<FiniteFn> {
        let mut entries: Vec<_> = self.entries.iter().filter(|(k, _)| k != c).cloned().collect();
        entries.push((c.clone(), v.to_term()));
        FiniteFn::new(cx, entries)
    }

    /// `(f_c, f^c)`: the restrictions to keys below `c` and to keys at or above `c`.
    pub fn split(&self, cx: &Ctx, c: &Term) -> Result<(FiniteFn, FiniteFn)> {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for e in &self.entries {
            if cmp(cx, &e.0, c)? == Ordering::Less {
                lo.push(e.clone());
            } else {
                hi.push(e.clone());
            }
        }
        Ok((FiniteFn { entries: lo }, FiniteFn { entries: hi }))
    }

    /// `g_c * f^c`.
    pub fn concat(cx: &Ctx, g: &FiniteFn, f: &FiniteFn, c: &Term) -> Result<FiniteFn> {
        let (lo, _) = g.split(cx, c)?;
        let (_, hi) = f.split(cx, c)?;
        let mut entries = lo.entries;
        entries.extend(hi.entries);
        Ok(FiniteFn { entries })
    }

    /// Support points strictly above `c`, ascending.
    pub fn keys_above(&self, cx: &Ctx, c: &Term) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        for (k, _) in &self.entries {
            if cmp(cx, k, c)? == Ordering::Greater {
                out.push(k.clone());
            }
        }
        Ok(out)
    }

    /// `SC_Λ(f)`: the keys together with the coefficient sets of the values.
    pub fn sc_lambda(&self) -> Vec<Term> {
        let mut out: Vec<Term> = Vec::new();
        for (k, v) in &self.entries {
            if !out.contains(k) {
                out.push(k.clone());
            }
            let lnf = Lnf::from_term(&Ctx::default(), v).expect("finite-function values are Λ-base terms");
            for t in lnf.sc_lambda() {
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.entries.iter().map(|(k, v)| k.node_count() + v.node_count()).sum()
    }

    /// The coefficient discipline on values: every coefficient is 1 except
    /// possibly the last, which may exceed 1 only under iterate index 1.
    pub fn coefficients_ok(&self, cx: &Ctx) -> Result<bool> {
        for (_, v) in &self.entries {
            let lnf = Lnf::from_term(cx, v)?;
            let n = lnf.terms.len();
            for (i, t) in lnf.terms.iter().enumerate() {
                if !t.coeff.is_one() && (i + 1 != n || !t.iter.is_one()) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

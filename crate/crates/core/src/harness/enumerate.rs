//! Bottom-up enumeration of validated terms by node count.
//!
//! Candidates of size `s` are assembled from pools of smaller terms. A
//! candidate is kept only when it is already canonical as built, its node
//! count is exactly `s`, and it validates. Non-canonical builds are
//! duplicates of terms reached directly, so nothing is lost by dropping them.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{OrdError, Result};
use crate::hull::{validate_lnf, validate_ot};
use crate::order::{cmp, lt, sort_dedup, Ctx};
use crate::term::arith;
use crate::term::lnf::{Lnf, LnfTerm};
use crate::term::{FiniteFn, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator {
    Sum,
    Phi,
    Reg,
    /// `ψ_κ(a)` for `κ ∈ {Ω, Λ, σ⁺}`.
    Psi,
    PsiS,
    PsiStep,
    /// Finite-function values beyond `θ̃_1(0)·a`.
    Theta,
}

impl Generator {
    pub const ALL: [Generator; 7] = [
        Generator::Sum,
        Generator::Phi,
        Generator::Reg,
        Generator::Psi,
        Generator::PsiS,
        Generator::PsiStep,
        Generator::Theta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Sum => "sum",
            Generator::Phi => "phi",
            Generator::Reg => "reg",
            Generator::Psi => "psi",
            Generator::PsiS => "psiS",
            Generator::PsiStep => "psiStep",
            Generator::Theta => "theta",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = OrdError;

    fn from_str(s: &str) -> Result<Generator> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| OrdError::domain(format!("unknown generator {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct EnumSpec {
    pub max_size: usize,
    pub below: Option<Term>,
    pub generators: Vec<Generator>,
    /// The enumeration is exhaustive; the seed is carried for the drivers
    /// that sample from its output.
    pub seed: u64,
    /// Cap on the number of candidates examined.
    pub budget: usize,
    /// Largest support of a generated finite function.
    pub max_support: usize,
}

impl EnumSpec {
    pub fn new(max_size: usize) -> EnumSpec {
        EnumSpec {
            max_size,
            below: None,
            generators: Generator::ALL.to_vec(),
            seed: 0,
            budget: 20_000_000,
            max_support: 2,
        }
    }

    pub fn with_generators(mut self, gens: &[Generator]) -> EnumSpec {
        self.generators = gens.to_vec();
        self
    }

    pub fn below(mut self, bound: Term) -> EnumSpec {
        self.below = Some(bound);
        self
    }

    fn has(&self, g: Generator) -> bool {
        self.generators.contains(&g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// Ascending, without duplicates.
    pub terms: Vec<Term>,
    /// The candidate budget ran out; `terms` is a partial result.
    pub exhausted: bool,
}

pub fn enumerate(cx: &Ctx, spec: &EnumSpec) -> Result<Enumeration> {
    let mut en = Enumerator {
        cx,
        spec,
        main: vec![Vec::new(); spec.max_size + 1],
        lnf: vec![Vec::new(); spec.max_size + 1],
        seen: HashSet::new(),
        seen_lnf: HashSet::new(),
        fns: HashMap::new(),
        examined: 0,
    };
    let exhausted = en.run().is_err();
    let mut terms: Vec<Term> = en.main.into_iter().flatten().collect();
    if let Some(b) = &spec.below {
        let mut kept = Vec::with_capacity(terms.len());
        for t in terms {
            if lt(cx, &t, b)? {
                kept.push(t);
            }
        }
        terms = kept;
    }
    sort_dedup(cx, &mut terms)?;
    Ok(Enumeration { terms, exhausted })
}

struct OutOfBudget;

struct Enumerator<'a> {
    cx: &'a Ctx,
    spec: &'a EnumSpec,
    main: Vec<Vec<Term>>,
    /// Non-zero Λ-base values by size; zero is handled separately.
    lnf: Vec<Vec<Term>>,
    seen: HashSet<Term>,
    seen_lnf: HashSet<Term>,
    fns: HashMap<usize, Vec<FiniteFn>>,
    examined: usize,
}

impl Enumerator<'_> {
    fn run(&mut self) -> std::result::Result<(), OutOfBudget> {
        let spec = self.spec;
        for s in 1..=spec.max_size {
            for c in self.main_candidates(s)? {
                self.offer(s, c)?;
            }
            if spec.has(Generator::PsiS) || spec.has(Generator::PsiStep) {
                for v in self.lnf_candidates(s)? {
                    self.offer_lnf(s, v)?;
                }
            }
        }
        Ok(())
    }

    fn tick(&mut self) -> std::result::Result<(), OutOfBudget> {
        self.examined += 1;
        if self.examined > self.spec.budget {
            return Err(OutOfBudget);
        }
        Ok(())
    }

    fn offer(&mut self, s: usize, t: Term) -> std::result::Result<(), OutOfBudget> {
        self.tick()?;
        if t.node_count() != s || self.seen.contains(&t) {
            return Ok(());
        }
        if validate_ot(self.cx, &t).valid {
            self.seen.insert(t.clone());
            self.main[s].push(t);
        }
        Ok(())
    }

    fn offer_lnf(&mut self, s: usize, v: Term) -> std::result::Result<(), OutOfBudget> {
        self.tick()?;
        if v.is_zero() || v.node_count() != s || self.seen_lnf.contains(&v) {
            return Ok(());
        }
        if validate_lnf(self.cx, &v).valid {
            self.seen_lnf.insert(v.clone());
            self.lnf[s].push(v);
        }
        Ok(())
    }

    fn below_lambda(&self, t: &Term) -> bool {
        lt(self.cx, t, &Term::Lambda).unwrap_or(false)
    }

    fn main_candidates(&mut self, s: usize) -> std::result::Result<Vec<Term>, OutOfBudget> {
        let cx = self.cx;
        let spec = self.spec;
        let mut out = Vec::new();
        if s == 1 {
            out.extend([Term::Zero, Term::Omega, Term::Stable, Term::Lambda]);
            if spec.has(Generator::Sum) || spec.has(Generator::Phi) {
                out.push(Term::one());
            }
        }
        if spec.has(Generator::Sum) && s >= 2 {
            out.push(Term::nat(s as u64));
        }
        if spec.has(Generator::Phi) {
            for sa in 1..s.saturating_sub(1) {
                let sb = s - 1 - sa;
                for a in &self.main[sa] {
                    for b in &self.main[sb] {
                        let raw = Term::phi_raw(a.clone(), b.clone());
                        if arith::phi(cx, a, b).is_ok_and(|n| n == raw) {
                            out.push(raw);
                        }
                    }
                }
            }
        }
        if spec.has(Generator::Sum) {
            for sh in 1..s {
                let sr = s - sh;
                for h in &self.main[sh] {
                    if !h.is_principal() || h.is_one() {
                        continue;
                    }
                    for r in &self.main[sr] {
                        if r.is_zero() || cmp(cx, h, &r.parts()[0]).map_or(true, |o| o.is_lt()) {
                            continue;
                        }
                        let mut parts = vec![h.clone()];
                        parts.extend(r.parts().iter().cloned());
                        out.push(Term::Sum(parts.into()));
                    }
                }
            }
        }
        if spec.has(Generator::Reg) && s >= 2 {
            for a in &self.main[s - 1] {
                if a.in_psi_s() {
                    out.push(Term::reg_raw(a.clone()));
                }
            }
        }
        if spec.has(Generator::Psi) {
            for sk in 1..s.saturating_sub(1) {
                for k in &self.main[sk] {
                    if !matches!(k, Term::Omega | Term::Lambda | Term::NextReg(_)) {
                        continue;
                    }
                    for a in &self.main[s - 1 - sk] {
                        out.push(Term::psi_raw(k.clone(), FiniteFn::empty(), a.clone()));
                    }
                }
            }
        }
        if spec.has(Generator::PsiS) && s >= 5 {
            // 1 + |S| + |a| + |f|
            for sa in 1..=s - 4 {
                for f in self.functions(s - 2 - sa, 1)? {
                    for a in &self.main[sa] {
                        out.push(Term::psi_raw(Term::Stable, f.clone(), a.clone()));
                    }
                }
            }
        }
        if spec.has(Generator::PsiStep) && s >= 7 {
            for sp in 5..s - 1 {
                let pis: Vec<Term> = self.main[sp].iter().filter(|p| p.in_psi_s()).cloned().collect();
                if pis.is_empty() {
                    continue;
                }
                for sa in 1..s - sp {
                    let sg = s - 1 - sp - sa;
                    let gs = self.functions(sg, spec.max_support)?;
                    for pi in &pis {
                        for a in &self.main[sa] {
                            for g in &gs {
                                out.push(Term::psi_raw(pi.clone(), g.clone(), a.clone()));
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn lnf_candidates(&mut self, s: usize) -> std::result::Result<Vec<Term>, OutOfBudget> {
        let cx = self.cx;
        let mut out = Vec::new();
        for m in &self.main[s] {
            if !m.is_zero() && self.below_lambda(m) {
                out.push(Lnf::small(m.clone()).to_term());
            }
        }
        if !self.spec.has(Generator::Theta) {
            return Ok(out);
        }
        // θ̃_b(ξ)·a costs 1 + |b| + |ξ| + |a|, with |a| omitted when a = 1
        let zero = [Term::Zero];
        for sb in 1..s.saturating_sub(1) {
            for b in &self.main[sb] {
                if b.is_zero() || !b.is_principal() || !self.below_lambda(b) {
                    continue;
                }
                let rest = s - 1 - sb;
                for sx in 1..=rest {
                    let xs: &[Term] = if sx == 1 { &zero } else { &[] };
                    let pool = xs.iter().chain(self.lnf[sx].iter());
                    let coeffs: Vec<Term> = if sx == rest {
                        vec![Term::one()]
                    } else {
                        self.main[rest - sx].iter().filter(|a| !a.is_zero() && !a.is_one()).cloned().collect()
                    };
                    for x in pool {
                        if b.is_one() && x.is_zero() {
                            continue;
                        }
                        for a in &coeffs {
                            if self.below_lambda(a) {
                                out.push(LnfTerm::new(b.clone(), x.clone(), a.clone()).to_term());
                            }
                        }
                    }
                }
            }
        }
        // sums of a leading summand and a smaller rest
        for sh in 1..s {
            for h in &self.lnf[sh] {
                let Ok(hl) = Lnf::from_term(cx, h) else { continue };
                if hl.terms.len() != 1 {
                    continue;
                }
                for r in &self.lnf[s - sh] {
                    let Ok(rl) = Lnf::from_term(cx, r) else { continue };
                    let mut terms = hl.terms.clone();
                    terms.extend(rl.terms);
                    out.push(Lnf { terms }.to_term());
                }
            }
        }
        Ok(out)
    }

    /// Finite functions of total size `n` with support at most `max_support`.
    fn functions(&mut self, n: usize, max_support: usize) -> std::result::Result<Vec<FiniteFn>, OutOfBudget> {
        let key = n * 16 + max_support;
        if let Some(fs) = self.fns.get(&key) {
            return Ok(fs.clone());
        }
        let mut out = Vec::new();
        if n == 0 {
            out.push(FiniteFn::empty());
        }
        let points = self.points(n);
        for (k, v) in &points {
            out.push(FiniteFn::from_sorted(vec![(k.clone(), v.clone())]));
        }
        if max_support >= 2 {
            for n1 in 2..n.saturating_sub(1) {
                let lo = self.points(n1);
                let hi = self.points(n - n1);
                for p in &lo {
                    for q in &hi {
                        self.tick()?;
                        if lt(self.cx, &p.0, &q.0).unwrap_or(false) {
                            out.push(FiniteFn::from_sorted(vec![p.clone(), q.clone()]));
                        }
                    }
                }
            }
        }
        self.fns.insert(key, out.clone());
        Ok(out)
    }

    /// Pairs `(c, v)` with `|c| + |v| = n`, `c < Λ` and `v ≠ 0`.
    fn points(&self, n: usize) -> Vec<(Term, Term)> {
        let mut out = Vec::new();
        for sk in 1..n {
            for k in &self.main[sk] {
                if !self.below_lambda(k) {
                    continue;
                }
                for v in &self.lnf[n - sk] {
                    out.push((k.clone(), v.clone()));
                }
            }
        }
        out
    }
}

//! Randomized strictly descending chains.
//!
//! Each step proposes smaller terms by rewriting one position: structural
//! shrinks, expansions of an atom or of a `Ψ_S` term into a collapsing term
//! below it, and `k`-fold copies of a shrink of an additively principal term.
//! A proposal is taken only if it validates and compares below the current
//! term. A chain ends when no proposal is accepted.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::harness::gen::{rng, Rng8};
use crate::harness::shrink::{fn_shrinks, shrinks};
use crate::hull::{attrs, validate_ot};
use crate::order::{cmp, lt_lex, Ctx};
use crate::term::arith;
use crate::term::{FiniteFn, Term};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DescentReport {
    pub chains: usize,
    pub max_length: usize,
    pub total_steps: usize,
    pub all_terminated: bool,
    pub unterminated: usize,
    /// Steps between collapsing terms that differ only in a lexicographically
    /// smaller function.
    pub measure_steps: usize,
    /// Of those, the steps where `O(γ)` failed to decrease.
    pub measure_violations: usize,
    pub first_violation: Option<String>,
}

impl DescentReport {
    pub fn passed(&self) -> bool {
        self.all_terminated && self.measure_violations == 0
    }

    fn merge(mut self, o: DescentReport) -> DescentReport {
        self.chains += o.chains;
        self.max_length = self.max_length.max(o.max_length);
        self.total_steps += o.total_steps;
        self.all_terminated &= o.all_terminated;
        self.unterminated += o.unterminated;
        self.measure_steps += o.measure_steps;
        self.measure_violations += o.measure_violations;
        self.first_violation = self.first_violation.or(o.first_violation);
        self
    }
}

#[derive(Clone, Debug)]
pub struct DescentConfig {
    pub chains: usize,
    /// Step budget per chain.
    pub budget: usize,
    pub seed: u64,
    /// Random proposals tried per step before falling back to a full scan.
    pub attempts: usize,
    /// Small terms used as fresh indices and values.
    pub fillers: Vec<Term>,
}

impl DescentConfig {
    pub fn new(chains: usize, budget: usize, seed: u64) -> DescentConfig {
        let fillers = ["0", "1", "2", "Om", "phi(0,1)", "Om + 1", "S", "psi(Om; 0)", "L"]
            .iter()
            .map(|s| crate::textio::parse(s).expect("filler terms parse"))
            .collect();
        DescentConfig { chains, budget, seed, attempts: 24, fillers }
    }
}

pub fn descent_stress(cx: &Ctx, start: &Term, cfg: &DescentConfig) -> DescentReport {
    let empty = DescentReport { all_terminated: true, ..Default::default() };
    (0..cfg.chains)
        .into_par_iter()
        .map(|i| run_chain(cx, start, cfg, cfg.seed.wrapping_mul(0x9e37_79b9).wrapping_add(i as u64)))
        .reduce(|| empty.clone(), DescentReport::merge)
}

fn run_chain(cx: &Ctx, start: &Term, cfg: &DescentConfig, seed: u64) -> DescentReport {
    let mut r = rng(seed);
    let mut rep = DescentReport { chains: 1, all_terminated: false, ..Default::default() };
    let mut cur = start.clone();
    let mut steps = 0;
    while steps < cfg.budget {
        let Some(step) = next_step(cx, &cur, cfg, &mut r) else {
            rep.all_terminated = true;
            break;
        };
        steps += 1;
        if let Some((old, new)) = &step.lex_pair {
            rep.measure_steps += 1;
            if !measure_drops(cx, old, new) {
                rep.measure_violations += 1;
                rep.first_violation.get_or_insert_with(|| format!("{old} -> {new}"));
            }
        }
        cur = step.term;
    }
    rep.unterminated = usize::from(!rep.all_terminated);
    rep.max_length = steps;
    rep.total_steps = steps;
    rep
}

struct Step {
    term: Term,
    /// The rewritten position, when it went from `ψ_σ^f(a)` to `ψ_σ^g(a)`
    /// with `g <⁰_lx f` inside `Ψ_S`.
    lex_pair: Option<(Term, Term)>,
}

fn next_step(cx: &Ctx, cur: &Term, cfg: &DescentConfig, r: &mut Rng8) -> Option<Step> {
    if cur.is_zero() {
        return None;
    }
    let positions = positions(cur);
    // half the attempts go to `S` and `Ψ_S` positions, where the lexicographic steps live
    let stable: Vec<&Vec<usize>> = positions.iter().filter(|p| is_stable_pos(at(cur, p))).collect();
    for _ in 0..cfg.attempts {
        let path = match stable.choose(r) {
            Some(p) if r.gen_bool(0.5) => *p,
            _ => positions.choose(r)?,
        };
        let sub = at(cur, path);
        let cands = proposals(cx, sub, cfg, r);
        let Some(new) = cands.choose(r) else { continue };
        if let Some(s) = accept(cx, cur, path, sub, new) {
            return Some(s);
        }
    }
    // fall back to every structural shrink of every position
    let mut all: Vec<(usize, Term)> = Vec::new();
    for (i, path) in positions.iter().enumerate() {
        for s in shrinks(cx, at(cur, path)) {
            all.push((i, s));
        }
    }
    all.shuffle(r);
    all.into_iter().find_map(|(i, s)| accept(cx, cur, &positions[i], at(cur, &positions[i]), &s))
}

fn accept(cx: &Ctx, cur: &Term, path: &[usize], old: &Term, new: &Term) -> Option<Step> {
    let term = replace(cx, cur, path, new)?;
    if !validate_ot(cx, &term).valid || cmp(cx, &term, cur).ok()? != Ordering::Less {
        return None;
    }
    let lex_pair = match (old, new) {
        (Term::Psi(p), Term::Psi(q))
            if old.in_psi_s() && p.sub == q.sub && p.idx == q.idx && lt_lex(cx, &q.func, &p.func, &Term::Zero).unwrap_or(false) =>
        {
            Some((old.clone(), new.clone()))
        }
        _ => None,
    };
    Some(Step { term, lex_pair })
}

fn measure_drops(cx: &Ctx, old: &Term, new: &Term) -> bool {
    let (Ok(a), Ok(b)) = (attrs(cx, old), attrs(cx, new)) else {
        return false;
    };
    b.big_o.compare(cx, &a.big_o).is_ok_and(|o| o == Ordering::Less)
}

/// Candidate replacements for the subterm `t`.
fn proposals(cx: &Ctx, t: &Term, cfg: &DescentConfig, r: &mut Rng8) -> Vec<Term> {
    let mut out = Vec::new();
    let filler = |r: &mut Rng8| cfg.fillers.choose(r).cloned().unwrap_or(Term::Zero);
    match t {
        Term::Omega | Term::Lambda | Term::NextReg(_) => {
            out.push(Term::psi_raw(t.clone(), FiniteFn::empty(), filler(r)));
            if matches!(t, Term::Lambda) {
                out.push(Term::Stable);
            }
        }
        Term::Stable => {
            let a = filler(r);
            let f = FiniteFn::new(cx, vec![(Term::nat(r.gen_range(0..3)), Term::lnf_nat(r.gen_range(1..3)))]);
            if let Ok(f) = f {
                out.push(Term::psi_raw(Term::Stable, f, a));
            }
        }
        _ => {}
    }
    if t.in_psi_s() {
        // step down below π, or lower the function at the same index
        let g = match r.gen_range(0..3) {
            0 => FiniteFn::empty(),
            _ => FiniteFn::new(cx, vec![(Term::Zero, Term::lnf_nat(r.gen_range(1..4)))]).unwrap_or_default(),
        };
        out.push(Term::psi_raw(t.clone(), g, filler(r)));
        if let Term::Psi(p) = t {
            for g in fn_shrinks(cx, &p.func) {
                out.push(Term::psi_raw(p.sub.clone(), g, p.idx.clone()));
            }
        }
    }
    let sh = shrinks(cx, t);
    if t.is_principal() && !t.is_zero() {
        if let Some(s) = sh.choose(r) {
            let k = r.gen_range(2..=3);
            if let Ok(m) = arith::normalize_sum(cx, &vec![s.clone(); k]) {
                out.push(m);
            }
        }
    }
    out.extend(sh);
    out
}

fn is_stable_pos(t: &Term) -> bool {
    matches!(t, Term::Stable) || t.in_psi_s()
}

/// Paths to every main-view position, the root included. Finite-function
/// values are reached through their parent collapsing term only.
fn positions(t: &Term) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let kids: Vec<(usize, &Term)> = match t {
        Term::Sum(ps) => ps.iter().enumerate().collect(),
        Term::Phi(a, b) => vec![(0, &**a), (1, &**b)],
        Term::NextReg(a) => vec![(0, &**a)],
        Term::Psi(p) => vec![(0, &p.sub), (1, &p.idx)],
        _ => vec![],
    };
    for (i, k) in kids {
        for mut p in positions(k) {
            p.insert(0, i);
            out.push(p);
        }
    }
    out
}

fn at<'a>(t: &'a Term, path: &[usize]) -> &'a Term {
    let Some((&i, rest)) = path.split_first() else {
        return t;
    };
    let child = match t {
        Term::Sum(ps) => &ps[i],
        Term::Phi(a, b) => if i == 0 { &**a } else { &**b },
        Term::NextReg(a) => &**a,
        Term::Psi(p) => if i == 0 { &p.sub } else { &p.idx },
        _ => unreachable!("paths come from positions()"),
    };
    at(child, rest)
}

/// `t` with the position `path` replaced by `new`, renormalized upwards.
fn replace(cx: &Ctx, t: &Term, path: &[usize], new: &Term) -> Option<Term> {
    let Some((&i, rest)) = path.split_first() else {
        return Some(new.clone());
    };
    Some(match t {
        Term::Sum(ps) => {
            let mut parts = ps.to_vec();
            parts[i] = replace(cx, &ps[i], rest, new)?;
            arith::normalize_sum(cx, &parts).ok()?
        }
        Term::Phi(a, b) => {
            if i == 0 {
                arith::phi(cx, &replace(cx, a, rest, new)?, b).ok()?
            } else {
                arith::phi(cx, a, &replace(cx, b, rest, new)?).ok()?
            }
        }
        Term::NextReg(a) => {
            let x = replace(cx, a, rest, new)?;
            if x.is_zero() { Term::Omega } else { Term::reg_raw(x) }
        }
        Term::Psi(p) => {
            if i == 0 {
                Term::psi_raw(replace(cx, &p.sub, rest, new)?, p.func.clone(), p.idx.clone())
            } else {
                Term::psi_raw(p.sub.clone(), p.func.clone(), replace(cx, &p.idx, rest, new)?)
            }
        }
        _ => return None,
    })
}

//! Property drivers. Each returns tallies; failures are data.

use std::cmp::Ordering;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::harness::descent::{descent_stress, DescentConfig, DescentReport};
use crate::harness::enumerate::{enumerate, EnumSpec, Generator};
use crate::harness::gen::{self, rng, ValueShape};
use crate::harness::oracle::{in_cnf_fragment, in_veblen_fragment, oracle_cnf_compare, oracle_veblen_compare};
use crate::harness::shrink::minimize;
use crate::hull::{collapse, in_closure, in_hull, in_m, validate_ot};
use crate::order::{cmp, cmp_lnf, lt, lt_under, o_measure, o_measure_mu, Ctx, Measure};
use crate::term::arith;
use crate::term::{FiniteFn, Term};
use crate::textio::{from_structured, parse, print, print_fnmap, to_structured};

/// Fewer precondition-satisfying cases than this and a property is reported
/// as under-sampled.
pub const MIN_CASES: u64 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    UnderSampled,
    /// Violations of a property that fails under the literal definitions.
    KnownGap,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::UnderSampled => "under-sampled",
            Status::KnownGap => "known-gap",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub name: String,
    pub cases: u64,
    pub violations: u64,
    pub counterexample: Option<String>,
    /// Set on the measure tallies: `a(ξ)` drops the coefficients of `ξ`, so
    /// `o` does not separate functions that differ only in them.
    pub known_gap: bool,
}

impl Tally {
    pub fn new(name: &str) -> Tally {
        Tally { name: name.to_string(), cases: 0, violations: 0, counterexample: None, known_gap: false }
    }

    fn gap(name: &str) -> Tally {
        Tally { known_gap: true, ..Tally::new(name) }
    }

    pub fn status(&self) -> Status {
        if self.violations > 0 && self.known_gap {
            Status::KnownGap
        } else if self.violations > 0 {
            Status::Fail
        } else if self.cases < MIN_CASES {
            Status::UnderSampled
        } else {
            Status::Pass
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(witness());
            }
        }
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.cases += o.cases;
        self.violations += o.violations;
        self.counterexample = self.counterexample.or(o.counterexample);
        self.known_gap |= o.known_gap;
        self
    }
}

impl fmt::Display for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<28} {:>13}  cases={} violations={}", self.name, self.status(), self.cases, self.violations)?;
        if let Some(c) = &self.counterexample {
            write!(f, "  counterexample: {c}")?;
        }
        Ok(())
    }
}

/// Sizes and seed of a suite run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub corpus_size: usize,
    pub triples: usize,
    pub cnf_size: usize,
    pub veblen_size: usize,
    pub lemma_samples: usize,
    pub collapse_rhos: usize,
    pub collapse_pairs: usize,
    pub collapse_spot: usize,
    pub closure_sets: usize,
    pub closure_queries: usize,
    pub descent_chains: usize,
    pub descent_budget: usize,
}

impl SuiteConfig {
    /// A run of a few seconds.
    pub fn quick(seed: u64) -> SuiteConfig {
        SuiteConfig {
            seed,
            corpus_size: 5,
            triples: 100_000,
            cnf_size: 7,
            veblen_size: 6,
            lemma_samples: 300,
            collapse_rhos: 5,
            collapse_pairs: 200,
            collapse_spot: 100,
            closure_sets: 20,
            closure_queries: 100,
            descent_chains: 100,
            descent_budget: 100_000,
        }
    }

    /// The full acceptance sizes.
    pub fn full(seed: u64) -> SuiteConfig {
        SuiteConfig {
            seed,
            corpus_size: 6,
            triples: 1_000_000,
            cnf_size: 7,
            veblen_size: 6,
            lemma_samples: 1000,
            collapse_rhos: 20,
            collapse_pairs: 500,
            collapse_spot: 100,
            closure_sets: 100,
            closure_queries: 500,
            descent_chains: 1000,
            descent_budget: 100_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub corpus: usize,
    pub tallies: Vec<Tally>,
    pub descent: DescentReport,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.tallies.iter().all(|t| t.status() != Status::Fail)
    }

    pub fn tally(&self, name: &str) -> Option<&Tally> {
        self.tallies.iter().find(|t| t.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("seed {} corpus {}\n", self.seed, self.corpus);
        for t in &self.tallies {
            s.push_str(&format!("{t}\n"));
        }
        let d = &self.descent;
        s.push_str(&format!("descent chains={} max-length={} steps={}\n", d.chains, d.max_length, d.total_steps));
        s.push_str(if self.passed() { "result: pass\n" } else { "result: FAIL\n" });
        s
    }
}

/// The descent start `ψ_Ω(ω_2(S⁺ + 1))`.
pub fn descent_start(cx: &Ctx) -> Result<Term> {
    let x = arith::succ(cx, &Term::Lambda)?;
    Ok(Term::psi_raw(Term::Omega, FiniteFn::empty(), arith::omega_tower(cx, 2, &x)?))
}

/// Runs every driver with `cx`. The corpora are fixtures built with the
/// unmutated comparator, so a mutation shows up as violations rather than as
/// a failed enumeration.
pub fn property_suite(cx: &Ctx, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let fx = Ctx { mutation: None, ..*cx };
    let corpus = enumerate(&fx, &EnumSpec::new(cfg.corpus_size))?.terms;
    let mut tallies = Vec::new();
    tallies.extend(linear_order(cx, &corpus, cfg.triples, cfg.seed));
    let cnf = enumerate(&fx, &EnumSpec::new(cfg.cnf_size).with_generators(&[Generator::Sum, Generator::Phi]))?.terms;
    let cnf: Vec<Term> = cnf.into_iter().filter(in_cnf_fragment).collect();
    tallies.push(oracle_agreement(cx, "oracle-cnf", &cnf, oracle_cnf_compare));
    let veb = enumerate(&fx, &EnumSpec::new(cfg.veblen_size).with_generators(&[Generator::Sum, Generator::Phi]))?.terms;
    let veb: Vec<Term> = veb.into_iter().filter(in_veblen_fragment).collect();
    tallies.push(oracle_agreement(cx, "oracle-veblen", &veb, oracle_veblen_compare));
    tallies.extend(step_down_measure(cx, cfg.lemma_samples, cfg.seed));
    tallies.extend(lex_measure(cx, cfg.lemma_samples, cfg.seed));
    tallies.push(idless(cx, cfg.lemma_samples, cfg.seed));
    tallies.extend(collapse_iso(cx, &corpus, cfg.collapse_rhos, cfg.collapse_pairs, cfg.collapse_spot, cfg.seed));
    tallies.extend(closure_laws(cx, &corpus, cfg.closure_sets, cfg.closure_queries, cfg.seed));
    tallies.extend(round_trip(&corpus));
    tallies.push(validator_accepts(cx, &corpus));
    tallies.push(validator_rejects(cx, &corpus));
    let start = descent_start(&fx)?;
    let descent = descent_stress(cx, &start, &DescentConfig::new(cfg.descent_chains, cfg.descent_budget, cfg.seed));
    tallies.extend(descent_tallies(&descent));
    Ok(SuiteReport { seed: cfg.seed, corpus: corpus.len(), tallies, descent })
}

/// Termination of every chain, and `O` dropping on its lexicographic steps.
fn descent_tallies(d: &DescentReport) -> [Tally; 2] {
    let term = Tally {
        cases: d.chains as u64,
        violations: d.unterminated as u64,
        counterexample: (d.unterminated > 0).then(|| format!("{} chains exceeded the step budget", d.unterminated)),
        ..Tally::new("descent-terminates")
    };
    let measure = Tally {
        cases: d.measure_steps as u64,
        violations: d.measure_violations as u64,
        counterexample: d.first_violation.clone(),
        ..Tally::gap("descent-measure")
    };
    [term, measure]
}

fn show_cmp(o: &Result<Ordering>) -> String {
    match o {
        Ok(Ordering::Less) => "<".into(),
        Ok(Ordering::Equal) => "=".into(),
        Ok(Ordering::Greater) => ">".into(),
        Err(e) => format!("error ({e})"),
    }
}

/// Pairwise order and sampled transitivity on an ascending, duplicate-free
/// corpus: every pair `i < j` must compare `<` one way and `>` the other.
pub fn linear_order(cx: &Ctx, corpus: &[Term], triples: usize, seed: u64) -> [Tally; 2] {
    let pairs = (0..corpus.len())
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::new("order-pairs");
            let x = &corpus[i];
            for y in &corpus[i + 1..] {
                let (a, b) = (cmp(cx, x, y), cmp(cx, y, x));
                let ok = matches!((&a, &b), (Ok(Ordering::Less), Ok(Ordering::Greater)));
                t.record(ok, || {
                    let fails = |p: &Term, q: &Term| {
                        !matches!((cmp(cx, p, q), cmp(cx, q, p)), (Ok(Ordering::Less), Ok(Ordering::Greater)))
                    };
                    let mx = minimize(cx, x, |m| fails(m, y));
                    let my = minimize(cx, y, |m| fails(&mx, m));
                    format!("{x} vs {y}: {} / {}; minimized {mx} vs {my}", show_cmp(&a), show_cmp(&b))
                });
            }
            t
        })
        .reduce(|| Tally::new("order-pairs"), Tally::merge);
    let mut trans = Tally::new("order-transitivity");
    if corpus.len() >= 3 {
        let mut r = rng(seed);
        let picks: Vec<[usize; 3]> = (0..triples)
            .map(|_| [r.gen_range(0..corpus.len()), r.gen_range(0..corpus.len()), r.gen_range(0..corpus.len())])
            .collect();
        trans = picks
            .par_chunks(4096)
            .map(|chunk| {
                let mut t = Tally::new("order-transitivity");
                for &[i, j, k] in chunk {
                    let (x, y, z) = (&corpus[i], &corpus[j], &corpus[k]);
                    let ok = (|| -> Result<bool> {
                        let (xy, yz, xz) = (cmp(cx, x, y)?, cmp(cx, y, z)?, cmp(cx, x, z)?);
                        Ok(transitive(xy, yz, xz))
                    })()
                    .unwrap_or(false);
                    t.record(ok, || format!("{x}, {y}, {z}"));
                }
                t
            })
            .reduce(|| Tally::new("order-transitivity"), Tally::merge);
    }
    [pairs, trans]
}

/// Whether the three outcomes `x?y`, `y?z`, `x?z` fit some linear order.
fn transitive(xy: Ordering, yz: Ordering, xz: Ordering) -> bool {
    use Ordering::*;
    match (xy, yz) {
        (Equal, o) | (o, Equal) => xz == o,
        (Less, Less) => xz == Less,
        (Greater, Greater) => xz == Greater,
        _ => true,
    }
}

pub fn oracle_agreement(
    cx: &Ctx,
    name: &str,
    terms: &[Term],
    oracle: fn(&Term, &Term) -> Result<Ordering>,
) -> Tally {
    (0..terms.len())
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::new(name);
            for y in &terms[i..] {
                let x = &terms[i];
                let (a, b) = (cmp(cx, x, y), oracle(x, y));
                let ok = matches!((&a, &b), (Ok(p), Ok(q)) if p == q);
                t.record(ok, || format!("{x} vs {y}: compare {} oracle {}", show_cmp(&a), show_cmp(&b)));
            }
            t
        })
        .reduce(|| Tally::new(name), Tally::merge)
}

fn evaluated(cx: &Ctx, m: &Measure) -> Option<Term> {
    m.to_main(cx).ok()
}

/// `o(f) < o(g)` and `o_μ(f) < o_μ(g)` over a sample of pairs.
fn measure_pair_tallies(
    cx: &Ctx,
    names: [&str; 2],
    n: usize,
    seed: u64,
    mut sample: impl FnMut(&mut gen::Rng8) -> Result<Option<(FiniteFn, FiniteFn)>>,
) -> [Tally; 2] {
    let mut r = rng(seed);
    let mut o = Tally::gap(names[0]);
    let mut om = Tally::gap(names[1]);
    let mut attempts = 0;
    while (o.cases < n as u64 || om.cases < n as u64) && attempts < 200 * n {
        attempts += 1;
        let Ok(Some((f, g))) = sample(&mut r) else { continue };
        let w = || format!("f = {}, g = {}", print_fnmap(&f), print_fnmap(&g));
        let ok = match (o_measure(cx, &f), o_measure(cx, &g)) {
            (Ok(a), Ok(b)) => cmp_lnf(cx, &a, &b).is_ok_and(|x| x == Ordering::Less),
            _ => false,
        };
        o.record(ok, w);
        // o_μ compared after evaluation with base μ
        let Ok(mu) = gen::epsilon_above(cx, &mut r, &f, &g) else { continue };
        let (Ok(a), Ok(b)) = (o_measure_mu(cx, &f, &mu), o_measure_mu(cx, &g, &mu)) else {
            om.record(false, || format!("{} with μ = {mu}: o_μ undefined", w()));
            continue;
        };
        let (Some(ea), Some(eb)) = (evaluated(cx, &a), evaluated(cx, &b)) else { continue };
        let ok = lt(cx, &ea, &eb).unwrap_or(false);
        om.record(ok, || format!("{} with μ = {mu}", w()));
    }
    [o, om]
}

/// Step-down preconditions imply `o(f) < o(g)`.
pub fn step_down_measure(cx: &Ctx, n: usize, seed: u64) -> [Tally; 2] {
    let shape = ValueShape::default();
    measure_pair_tallies(cx, ["measure-step-down", "measure-step-down-mu"], n, seed, |r| {
        gen::step_down_pair(cx, r, &shape)
    })
}

/// `f <⁰_lx g` implies `o(f) < o(g)`.
pub fn lex_measure(cx: &Ctx, n: usize, seed: u64) -> [Tally; 2] {
    let shape = ValueShape::default();
    measure_pair_tallies(cx, ["measure-lex", "measure-lex-mu"], n, seed.wrapping_add(1), |r| {
        gen::lex_pair(cx, r, &shape)
    })
}

/// `f <^c ξ ≤ ζ` implies `f <^c ζ`.
pub fn idless(cx: &Ctx, n: usize, seed: u64) -> Tally {
    let shape = ValueShape::default();
    let mut r = rng(seed.wrapping_add(2));
    let mut t = Tally::new("under-monotone");
    let mut attempts = 0;
    while t.cases < n as u64 && attempts < 200 * n {
        attempts += 1;
        let Ok(Some((f, c, xi, zeta))) = gen::idless_tuple(cx, &mut r, &shape) else { continue };
        let ok = lt_under(cx, &f, &c, &zeta).unwrap_or(false);
        t.record(ok, || format!("f = {}, c = {c}, ξ = {}, ζ = {}", print_fnmap(&f), xi.to_term(), zeta.to_term()));
    }
    t
}

/// The collapse `α ↦ α[ρ/S]` on `M_ρ`: order and hull preservation, and
/// `M_ρ ∩ S = ρ` on a sample of terms below `S`.
pub fn collapse_iso(cx: &Ctx, corpus: &[Term], rhos: usize, pairs: usize, spot: usize, seed: u64) -> [Tally; 3] {
    let mut r = rng(seed.wrapping_add(3));
    let mut cands: Vec<&Term> = corpus.iter().filter(|t| t.in_psi_s()).collect();
    cands.shuffle(&mut r);
    let below_s: Vec<&Term> = corpus.iter().filter(|t| lt(cx, t, &Term::Stable).unwrap_or(false)).collect();
    let mut order = Tally::new("collapse-order");
    let mut hull = Tally::new("collapse-hull");
    let mut cap = Tally::new("collapse-m-cap-s");
    let mut used = 0;
    for rho in cands {
        if used == rhos {
            break;
        }
        let members: Vec<&Term> = corpus.iter().filter(|a| in_m(cx, a, rho).unwrap_or(false)).collect();
        let above: Vec<&Term> = members.iter().copied().filter(|g| lt(cx, &Term::Stable, g).unwrap_or(false)).collect();
        if members.len() < 2 || above.is_empty() {
            continue;
        }
        used += 1;
        let image = |a: &Term| collapse(cx, a, rho);
        for _ in 0..pairs {
            let (a, b) = (members.choose(&mut r).unwrap(), members.choose(&mut r).unwrap());
            let (ca, cb) = (image(a), image(b));
            let ok = match (&ca, &cb) {
                (Ok(x), Ok(y)) => cmp(cx, b, a).ok() == cmp(cx, y, x).ok(),
                _ => false,
            };
            order.record(ok, || format!("ρ = {rho}: {b} vs {a}"));
            let g = above.choose(&mut r).unwrap();
            let ok = match (&ca, &cb, image(g)) {
                (Ok(x), Ok(y), Ok(z)) => in_hull(cx, b, a, g).ok() == in_hull(cx, y, x, &z).ok(),
                _ => false,
            };
            hull.record(ok, || format!("ρ = {rho}: {b} ∈ H_{a}({g})"));
        }
        for _ in 0..spot {
            let Some(t) = below_s.choose(&mut r) else { break };
            let ok = in_m(cx, t, rho).ok() == lt(cx, t, rho).ok();
            cap.record(ok, || format!("ρ = {rho}: {t}"));
        }
    }
    if used < rhos {
        // too few ρ with usable hulls: make the shortfall visible
        order.counterexample.get_or_insert(format!("only {used} of {rhos} ρ had usable hulls"));
    }
    [order, hull, cap]
}

fn is_regular(t: &Term) -> bool {
    matches!(t, Term::Omega | Term::Stable | Term::Lambda | Term::NextReg(_)) || t.in_psi_s()
}

/// `X` reduced until every member satisfies `γ ∈ C^γ(X)`.
fn closure_admissible(cx: &Ctx, mut x: Vec<Term>) -> Vec<Term> {
    loop {
        let keep: Vec<Term> = x.iter().filter(|g| in_closure(cx, g, g, &x).unwrap_or(false)).cloned().collect();
        if keep.len() == x.len() {
            return keep;
        }
        x = keep;
    }
}

/// Monotonicity of `C^α(X)` in `α` and its stability on `[α, α⁺)`.
pub fn closure_laws(cx: &Ctx, corpus: &[Term], sets: usize, queries: usize, seed: u64) -> [Tally; 2] {
    let mut r = rng(seed.wrapping_add(4));
    let mut mono = Tally::new("closure-monotone");
    let mut stable = Tally::new("closure-stable");
    if corpus.len() < 2 {
        return [mono, stable];
    }
    // index of the next regular strictly after each position
    let mut next_reg = vec![corpus.len(); corpus.len()];
    for i in (0..corpus.len().saturating_sub(1)).rev() {
        next_reg[i] = if is_regular(&corpus[i + 1]) { i + 1 } else { next_reg[i + 1] };
    }
    for _ in 0..sets {
        let n = r.gen_range(1..=6);
        let x: Vec<Term> = corpus.choose_multiple(&mut r, n).cloned().collect();
        let x = closure_admissible(cx, x);
        let xs: Vec<String> = x.iter().map(print).collect();
        for _ in 0..queries {
            let g = corpus.choose(&mut r).unwrap();
            let (mut i, mut j) = (r.gen_range(0..corpus.len()), r.gen_range(0..corpus.len()));
            if i > j {
                std::mem::swap(&mut i, &mut j);
            }
            let (a, b) = (&corpus[i], &corpus[j]);
            let ok = match (in_closure(cx, g, b, &x), in_closure(cx, g, a, &x)) {
                (Ok(in_b), Ok(in_a)) => !in_b || in_a,
                _ => false,
            };
            mono.record(ok, || format!("{g} with α = {a}, β = {b}, X = {{{}}}", xs.join(", ")));
            // β strictly between α and the next regular
            if next_reg[i] > i + 1 {
                let k = r.gen_range(i + 1..next_reg[i]);
                let b = &corpus[k];
                let ok = in_closure(cx, g, a, &x).ok() == in_closure(cx, g, b, &x).ok();
                stable.record(ok, || format!("{g} with α = {a}, β = {b}, X = {{{}}}", xs.join(", ")));
            }
        }
    }
    [mono, stable]
}

/// Text and structured round trips.
pub fn round_trip(corpus: &[Term]) -> [Tally; 2] {
    let mut text = Tally::new("round-trip-text");
    let mut doc = Tally::new("round-trip-structured");
    for t in corpus {
        let s = print(t);
        text.record(parse(&s).ok().as_ref() == Some(t), || s.clone());
        doc.record(from_structured(&to_structured(t)).ok().as_ref() == Some(t), || s.clone());
    }
    [text, doc]
}

/// Every enumerated term validates; the enumerator already filtered on this,
/// so the check guards against drift between the two.
pub fn validator_accepts(cx: &Ctx, corpus: &[Term]) -> Tally {
    let mut t = Tally::new("validator-accepts");
    for x in corpus {
        t.record(validate_ot(cx, x).valid, || print(x));
    }
    t
}

/// Mutants of corpus terms that break a named construction condition; every
/// one must be rejected.
pub fn validator_rejects(cx: &Ctx, corpus: &[Term]) -> Tally {
    let mut t = Tally::new("validator-rejects");
    for x in corpus {
        let mut mutants: Vec<Term> = Vec::new();
        if let Term::Sum(ps) = x {
            let mut rev = ps.to_vec();
            rev.reverse();
            if rev.as_slice() != &ps[..] {
                mutants.push(Term::Sum(rev.into()));
            }
        }
        if x.is_principal() && arith::phi(cx, &Term::Zero, x).is_ok_and(|p| &p == x) {
            // ω^x = x: writing it out is not normal
            mutants.push(Term::phi_raw(Term::Zero, x.clone()));
        }
        if !x.is_zero() && !x.in_psi_s() {
            mutants.push(Term::reg_raw(x.clone()));
        }
        if let Term::Psi(p) = x {
            if p.sub == Term::Stable {
                mutants.push(Term::psi_raw(Term::Stable, FiniteFn::empty(), p.idx.clone()));
            }
        }
        for m in mutants {
            t.record(!validate_ot(cx, &m).valid, || print(&m));
        }
    }
    t
}

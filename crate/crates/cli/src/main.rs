//! `ot`: command-line front end for the notation system.

mod input;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ot_core::harness::{
    descent_start, descent_stress, enumerate, property_suite, DescentConfig, EnumSpec, Generator, SuiteConfig,
};
use ot_core::hull::{attrs, collapse, in_closure, in_hull, validate_ot};
use ot_core::order::{cmp, o_measure, Ctx, Mutation};
use ot_core::OrdError;
use serde_json::json;

use crate::input::{read_fn, read_term, read_xset};
use crate::output::{attrs_doc, report_text, term_doc, validation_text, Out};

#[derive(Parser, Debug)]
#[command(name = "ot", version, about = "Ordinal notation terms: compare, validate, collapse and stress-test")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 7, global = true)]
    seed: u64,
    /// Step budget: candidates for `enumerate`, steps per chain for `stress`.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    /// Largest term size for `enumerate`.
    #[arg(long, default_value_t = 4, global = true)]
    max_size: usize,
    /// Keep only terms below this one (`enumerate`).
    #[arg(long, global = true)]
    below: Option<String>,
    /// Comma-separated generator names (`enumerate`).
    #[arg(long, value_delimiter = ',', global = true)]
    generators: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print `<`, `=` or `>`.
    Compare { a: String, b: String },
    /// Print the canonical form.
    Normalize { a: String },
    /// Check membership in the notation system.
    Validate { a: String },
    /// Decide `G ∈ H_A(B)`.
    Hull { g: String, a: String, b: String },
    /// Decide `G ∈ C^A(X)` for the terms listed in `XFILE`.
    Closure { g: String, a: String, xfile: String },
    /// The measure `o(F)` of an irreducible finite function `{c: v, …}`.
    Omeasure { f: String },
    /// `m`, `p₀`, `Λ` and `O` of a collapsing term.
    Attrs { a: String },
    /// The image of `A` under the collapse at `RHO`.
    Collapse { a: String, rho: String },
    /// List validated terms up to `--max-size`, in increasing order.
    Enumerate,
    /// Random descending chains.
    Stress {
        /// Start term; defaults to `ψ_Ω(ω_2(S⁺ + 1))`.
        start: Option<String>,
        #[arg(long, default_value_t = 1000)]
        chains: usize,
    },
    /// Run the property suite.
    Selftest {
        /// Smaller sizes, a few seconds.
        #[arg(long)]
        quick: bool,
        /// Run with a deliberately broken comparator case.
        #[arg(long, value_parser = parse_mutation)]
        mutation: Option<Mutation>,
    },
}

fn parse_mutation(s: &str) -> Result<Mutation, String> {
    Mutation::from_name(s).ok_or_else(|| {
        let names: Vec<_> = Mutation::ALL.iter().map(|m| m.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

/// Failure classes, mapped to exit codes.
pub enum Fail {
    /// Invalid input term, a domain error, or a negative check.
    Domain(String),
    Usage(String),
}

impl From<OrdError> for Fail {
    fn from(e: OrdError) -> Fail {
        Fail::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let out = Out::new(cli.global.format);
    if cli.global.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs).build_global();
    }
    match run(&cli, &out) {
        Ok(code) => code,
        Err(Fail::Domain(m)) => {
            out.error("domain", &m);
            ExitCode::from(1)
        }
        Err(Fail::Usage(m)) => {
            out.error("usage", &m);
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, out: &Out) -> Result<ExitCode, Fail> {
    let cx = Ctx::default();
    let g = &cli.global;
    match &cli.cmd {
        Cmd::Compare { a, b } => {
            let (x, y) = (read_term(&cx, a)?, read_term(&cx, b)?);
            let sym = match cmp(&cx, &x, &y)? {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            out.emit(sym, json!({"command": "compare", "result": sym}));
        }
        Cmd::Normalize { a } => {
            let t = ot_core::textio::parse(&input::load(a)?).map_err(|e| input::located(a, e))?;
            out.emit(&t.to_string(), json!({"command": "normalize", "term": term_doc(&t)}));
        }
        Cmd::Validate { a } => {
            let t = ot_core::textio::parse(&input::load(a)?).map_err(|e| input::located(a, e))?;
            let rep = validate_ot(&cx, &t);
            out.emit(&validation_text(&rep), json!({"command": "validate", "report": rep}));
            if !rep.valid {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Hull { g: gamma, a, b } => {
            let (gt, at, bt) = (read_term(&cx, gamma)?, read_term(&cx, a)?, read_term(&cx, b)?);
            let r = in_hull(&cx, &gt, &at, &bt)?;
            out.emit(&r.to_string(), json!({"command": "hull", "result": r}));
        }
        Cmd::Closure { g: gamma, a, xfile } => {
            let (gt, at) = (read_term(&cx, gamma)?, read_term(&cx, a)?);
            let x = read_xset(&cx, xfile)?;
            let r = in_closure(&cx, &gt, &at, &x)?;
            out.emit(&r.to_string(), json!({"command": "closure", "result": r}));
        }
        Cmd::Omeasure { f } => {
            let func = read_fn(f)?;
            let o = o_measure(&cx, &func)?.to_term();
            out.emit(&o.to_string(), json!({"command": "omeasure", "value": term_doc(&o)}));
        }
        Cmd::Attrs { a } => {
            let t = read_term(&cx, a)?;
            let at = attrs(&cx, &t)?;
            let (text, doc) = attrs_doc(&at);
            out.emit(&text, json!({"command": "attrs", "attrs": doc}));
        }
        Cmd::Collapse { a, rho } => {
            let (at, rt) = (read_term(&cx, a)?, read_term(&cx, rho)?);
            let c = collapse(&cx, &at, &rt)?;
            out.emit(&c.to_string(), json!({"command": "collapse", "term": term_doc(&c)}));
        }
        Cmd::Enumerate => {
            let mut spec = EnumSpec::new(g.max_size);
            spec.seed = g.seed;
            if let Some(b) = g.budget {
                spec.budget = b;
            }
            if let Some(names) = &g.generators {
                let gens: Result<Vec<Generator>, _> = names.iter().map(|n| n.parse()).collect();
                spec.generators = gens.map_err(|e: OrdError| Fail::Usage(e.to_string()))?;
            }
            if let Some(b) = &g.below {
                spec = spec.below(read_term(&cx, b)?);
            }
            let e = enumerate(&cx, &spec)?;
            let text: Vec<String> = e.terms.iter().map(|t| t.to_string()).collect();
            let docs: Vec<_> = e.terms.iter().map(term_doc).collect();
            out.emit(
                &text.join("\n"),
                json!({"command": "enumerate", "count": e.terms.len(), "exhausted": e.exhausted, "terms": docs}),
            );
            if e.exhausted {
                out.note("candidate budget exhausted; the list is partial");
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Stress { start, chains } => {
            let s = match start {
                Some(s) => read_term(&cx, s)?,
                None => descent_start(&cx)?,
            };
            let cfg = DescentConfig::new(*chains, g.budget.unwrap_or(100_000), g.seed);
            let rep = descent_stress(&cx, &s, &cfg);
            let text = format!(
                "start {s}\nchains {} terminated {} max-length {} steps {}\nmeasure-steps {} measure-violations {}{}",
                rep.chains,
                rep.chains - rep.unterminated,
                rep.max_length,
                rep.total_steps,
                rep.measure_steps,
                rep.measure_violations,
                rep.first_violation.as_ref().map(|v| format!("\nfirst violation: {v}")).unwrap_or_default(),
            );
            out.emit(&text, json!({"command": "stress", "start": term_doc(&s), "report": rep}));
            if !rep.all_terminated {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Selftest { quick, mutation } => {
            let cfg = if *quick { SuiteConfig::quick(g.seed) } else { SuiteConfig::full(g.seed) };
            let scx = mutation.map(Ctx::with_mutation).unwrap_or_default();
            let rep = property_suite(&scx, &cfg)?;
            out.emit(&report_text(&rep), json!({"command": "selftest", "report": output::suite_doc(&rep)}));
            if !rep.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

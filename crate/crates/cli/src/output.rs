//! Text and structured emission.

use ot_core::harness::SuiteReport;
use ot_core::hull::{PsiAttrs, ValidationReport};
use ot_core::textio::{print_fnmap, to_structured};
use ot_core::Term;
use std::io::Write;

use serde_json::{json, Value};

use crate::Format;

pub struct Out {
    format: Format,
}

impl Out {
    pub fn new(format: Format) -> Out {
        Out { format }
    }

    pub fn emit(&self, text: &str, doc: Value) {
        match self.format {
            Format::Text => line(&mut std::io::stdout(), text),
            Format::Structured => line(&mut std::io::stdout(), &pretty(&doc)),
        }
    }

    pub fn error(&self, kind: &str, message: &str) {
        match self.format {
            Format::Text => line(&mut std::io::stderr(), &format!("error: {message}")),
            Format::Structured => {
                line(&mut std::io::stderr(), &pretty(&json!({"error": {"kind": kind, "message": message}})))
            }
        }
    }

    pub fn note(&self, message: &str) {
        match self.format {
            Format::Text => line(&mut std::io::stderr(), &format!("note: {message}")),
            Format::Structured => line(&mut std::io::stderr(), &pretty(&json!({"note": message}))),
        }
    }
}

/// Write one line; a closed pipe is not an error worth a panic.
fn line(w: &mut impl Write, s: &str) {
    let _ = writeln!(w, "{s}");
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

/// A term as its canonical text and its tagged tree.
pub fn term_doc(t: &Term) -> Value {
    json!({"text": t.to_string(), "tree": to_structured(t)})
}

pub fn validation_text(rep: &ValidationReport) -> String {
    let mut s = match (rep.valid, rep.rule) {
        (true, Some(r)) => format!("valid ({r})"),
        (true, None) => "valid".to_string(),
        (false, Some(r)) => format!("invalid ({r})"),
        (false, None) => "invalid".to_string(),
    };
    for f in &rep.failures {
        s.push_str(&format!("\n  {}: {}", f.subterm, f.condition));
    }
    s
}

pub fn attrs_doc(a: &PsiAttrs) -> (String, Value) {
    let opt = |t: &Option<Term>| t.as_ref().map_or("-".to_string(), Term::to_string);
    let text = format!("m  {}\np0 {}\nL  {}\nO  {}", print_fnmap(&a.m), opt(&a.p0), opt(&a.lam), a.big_o);
    let doc = json!({
        "m": print_fnmap(&a.m),
        "p0": a.p0.as_ref().map(term_doc),
        "lambda": a.lam.as_ref().map(term_doc),
        "o": {"base": term_doc(&a.big_o.base), "value": term_doc(&a.big_o.value.to_term())},
    });
    (text, doc)
}

pub fn report_text(rep: &SuiteReport) -> String {
    rep.to_text().trim_end().to_string()
}

pub fn suite_doc(rep: &SuiteReport) -> Value {
    let tallies: Vec<Value> = rep
        .tallies
        .iter()
        .map(|t| {
            json!({
                "name": t.name,
                "status": t.status(),
                "cases": t.cases,
                "violations": t.violations,
                "counterexample": t.counterexample,
            })
        })
        .collect();
    json!({
        "seed": rep.seed,
        "corpus": rep.corpus,
        "passed": rep.passed(),
        "tallies": tallies,
        "descent": rep.descent,
    })
}

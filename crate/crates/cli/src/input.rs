//! Term arguments: literal strings or `@file` references.

use ot_core::hull::validate_ot;
use ot_core::order::Ctx;
use ot_core::textio::{parse, parse_fnmap};
use ot_core::{FiniteFn, OrdError, Term};

use crate::Fail;

/// The text of an argument, reading `@path` from disk.
pub fn load(arg: &str) -> Result<String, Fail> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Fail::Usage(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

/// A syntax error rendered with the input and a caret under the span.
pub fn located(text: &str, e: OrdError) -> Fail {
    match &e {
        OrdError::Syntax { span, message } => {
            let text = load(text).unwrap_or_else(|_| text.to_string());
            let col = text[..span.offset.min(text.len())].chars().count();
            let width = span.length.max(1);
            Fail::Domain(format!(
                "syntax error at {span}: {message}\n  {text}\n  {}{}",
                " ".repeat(col),
                "^".repeat(width)
            ))
        }
        _ => Fail::from(e),
    }
}

fn parse_at(arg: &str, text: &str) -> Result<Term, Fail> {
    parse(text).map_err(|e| located(arg, e))
}

/// Parse and validate a term argument.
pub fn read_term(cx: &Ctx, arg: &str) -> Result<Term, Fail> {
    let t = parse_at(arg, &load(arg)?)?;
    check(cx, &t)?;
    Ok(t)
}

fn check(cx: &Ctx, t: &Term) -> Result<(), Fail> {
    let rep = validate_ot(cx, t);
    if rep.valid {
        return Ok(());
    }
    let why: Vec<String> = rep.failures.iter().map(|f| format!("{}: {}", f.subterm, f.condition)).collect();
    Err(Fail::Domain(format!("{t} is not a valid term: {}", why.join("; "))))
}

pub fn read_fn(arg: &str) -> Result<FiniteFn, Fail> {
    let text = load(arg)?;
    parse_fnmap(&text).map_err(|e| located(arg, e))
}

/// Newline-separated terms; blank lines are skipped.
pub fn read_xset(cx: &Ctx, path: &str) -> Result<Vec<Term>, Fail> {
    let path = path.strip_prefix('@').unwrap_or(path);
    let text = std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("cannot read {path}: {e}")))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let t = parse(line).map_err(|e| match located(line, e) {
            Fail::Domain(m) => Fail::Domain(format!("{path}:{}: {m}", i + 1)),
            f => f,
        })?;
        check(cx, &t)?;
        out.push(t);
    }
    Ok(out)
}

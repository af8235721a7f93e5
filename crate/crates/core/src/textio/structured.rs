use serde_json::{json, Value};

use crate::error::{OrdError, Result};
use crate::term::{FiniteFn, Term};
use crate::textio::{parse, print};

/// Tagged-tree form: `{"k": "zero" | "om" | "s" | "lam" | "sum" | "phi" | "reg" | "psi" | "th", …}`.
pub fn to_structured(t: &Term) -> Value {
    match t {
        Term::Zero => json!({"k": "zero"}),
        Term::Omega => json!({"k": "om"}),
        Term::Stable => json!({"k": "s"}),
        Term::Lambda => json!({"k": "lam"}),
        Term::Sum(ps) => json!({"k": "sum", "parts": ps.iter().map(to_structured).collect::<Vec<_>>()}),
        Term::Phi(a, b) => json!({"k": "phi", "a": to_structured(a), "b": to_structured(b)}),
        Term::NextReg(a) => json!({"k": "reg", "arg": to_structured(a)}),
        Term::Psi(p) => {
            let f: Vec<Value> = p
                .func
                .entries()
                .iter()
                .map(|(k, v)| json!([to_structured(k), to_structured(v)]))
                .collect();
            json!({"k": "psi", "sub": to_structured(&p.sub), "idx": to_structured(&p.idx), "fn": f})
        }
        Term::Theta(th) => json!({
            "k": "th",
            "iter": to_structured(&th.iter),
            "arg": to_structured(&th.arg),
            "coeff": to_structured(&th.coeff),
        }),
    }
}

/// Inverse of [`to_structured`]. Documents that do not describe a canonical
/// term are rejected.
pub fn from_structured(v: &Value) -> Result<Term> {
    let t = raw(v)?;
    let canonical = parse(&print(&t)).map_err(|e| OrdError::Format(format!("not a canonical term: {e}")))?;
    if canonical != t {
        return Err(OrdError::Format(format!("not in canonical form; canonical spelling is {canonical}")));
    }
    Ok(t)
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| OrdError::Format(format!("missing field {name:?}")))
}

fn raw(v: &Value) -> Result<Term> {
    let k = field(v, "k")?.as_str().ok_or_else(|| OrdError::Format("tag is not a string".into()))?;
    Ok(match k {
        "zero" => Term::Zero,
        "om" => Term::Omega,
        "s" => Term::Stable,
        "lam" => Term::Lambda,
        "sum" => {
            let ps = field(v, "parts")?
                .as_array()
                .ok_or_else(|| OrdError::Format("sum parts must be a list".into()))?
                .iter()
                .map(raw)
                .collect::<Result<Vec<_>>>()?;
            if ps.len() < 2 {
                return Err(OrdError::Format("sum needs at least two parts".into()));
            }
            Term::Sum(ps.into())
        }
        "phi" => Term::phi_raw(raw(field(v, "a")?)?, raw(field(v, "b")?)?),
        "reg" => Term::reg_raw(raw(field(v, "arg")?)?),
        "psi" => {
            let mut entries = Vec::new();
            let list = field(v, "fn")?
                .as_array()
                .ok_or_else(|| OrdError::Format("fn must be a list of pairs".into()))?;
            for e in list {
                match e.as_array().map(Vec::as_slice) {
                    Some([k, x]) => entries.push((raw(k)?, raw(x)?)),
                    _ => return Err(OrdError::Format("fn entries are [key, value] pairs".into())),
                }
            }
            Term::psi_raw(raw(field(v, "sub")?)?, FiniteFn::from_sorted(entries), raw(field(v, "idx")?)?)
        }
        "th" => Term::theta_raw(raw(field(v, "iter")?)?, raw(field(v, "arg")?)?, raw(field(v, "coeff")?)?),
        other => return Err(OrdError::Format(format!("unknown tag {other:?}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_document() {
        assert_eq!(to_structured(&Term::Zero), json!({"k": "zero"}));
        assert_eq!(from_structured(&json!({"k": "zero"})).unwrap(), Term::Zero);
    }

    #[test]
    fn collapse_round_trip() {
        let t = parse("psi(S; 2; {1: th(1,1) + 2})").unwrap();
        let doc = to_structured(&t);
        assert_eq!(doc["k"], "psi");
        assert_eq!(doc["fn"].as_array().unwrap().len(), 1);
        assert_eq!(from_structured(&doc).unwrap(), t);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(from_structured(&json!({"k": "nope"})), Err(OrdError::Format(_))));
        // ω + ω^ω is not in normal form
        let w = to_structured(&parse("phi(0,1)").unwrap());
        let ww = to_structured(&parse("phi(0,phi(0,1))").unwrap());
        let bad = json!({"k": "sum", "parts": [w, ww]});
        assert!(matches!(from_structured(&bad), Err(OrdError::Format(_))));
    }
}

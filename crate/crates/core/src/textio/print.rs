use crate::term::{FiniteFn, Term, Theta};

/// Canonical text of a term. Naturals print as numerals in both views.
pub fn print(t: &Term) -> String {
    let mut s = String::new();
    write_term(&mut s, t);
    s
}

pub fn print_fnmap(f: &FiniteFn) -> String {
    let mut s = String::new();
    write_fnmap(&mut s, f);
    s
}

fn write_term(s: &mut String, t: &Term) {
    if let Some(n) = t.as_nat().filter(|&n| n > 0) {
        s.push_str(&n.to_string());
        return;
    }
    match t {
        Term::Zero => s.push('0'),
        Term::Omega => s.push_str("Om"),
        Term::Stable => s.push('S'),
        Term::Lambda => s.push('L'),
        Term::Sum(ps) => {
            if t.is_lnf_view() {
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        s.push_str(" + ");
                    }
                    write_term(s, p);
                }
            } else {
                write_parts(s, ps);
            }
        }
        Term::Phi(a, b) => {
            s.push_str("phi(");
            write_term(s, a);
            s.push(',');
            write_term(s, b);
            s.push(')');
        }
        Term::NextReg(a) if a.is_zero() => s.push_str("Om"),
        Term::NextReg(a) => {
            s.push_str("reg(");
            write_term(s, a);
            s.push(')');
        }
        Term::Psi(p) => {
            s.push_str("psi(");
            write_term(s, &p.sub);
            s.push_str("; ");
            write_term(s, &p.idx);
            if !p.func.is_empty() {
                s.push_str("; ");
                write_fnmap(s, &p.func);
            }
            s.push(')');
        }
        Term::Theta(th) => write_theta(s, th),
    }
}

/// Main-view sum parts with a trailing run of ones written as one numeral.
fn write_parts(s: &mut String, ps: &[Term]) {
    let ones = ps.iter().rev().take_while(|p| p.is_one()).count();
    let head = &ps[..ps.len() - ones];
    for (i, p) in head.iter().enumerate() {
        if i > 0 {
            s.push_str(" + ");
        }
        write_term(s, p);
    }
    if ones > 0 {
        if !head.is_empty() {
            s.push_str(" + ");
        }
        s.push_str(&ones.to_string());
    }
}

/// `θ̃_b(ξ)·a`. Below `Λ` this is just `a`; otherwise one `th(b,ξ)*p` per
/// part `p` of `a`, which the parser merges back.
fn write_theta(s: &mut String, th: &Theta) {
    if th.iter.is_one() && th.arg.is_zero() {
        write_term(s, &th.coeff);
        return;
    }
    let mut base = String::from("th(");
    write_term(&mut base, &th.iter);
    base.push(',');
    write_term(&mut base, &th.arg);
    base.push(')');

    let ps = th.coeff.parts();
    let ones = ps.iter().rev().take_while(|p| p.is_one()).count();
    let mut items: Vec<String> = ps[..ps.len() - ones]
        .iter()
        .map(|p| format!("{base}*{}", print(p)))
        .collect();
    match ones {
        0 => {}
        1 => items.push(base.clone()),
        n => items.push(format!("{base}*{n}")),
    }
    s.push_str(&items.join(" + "));
}

fn write_fnmap(s: &mut String, f: &FiniteFn) {
    s.push('{');
    for (i, (k, v)) in f.entries().iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        write_term(s, k);
        s.push_str(": ");
        write_term(s, v);
    }
    s.push('}');
}

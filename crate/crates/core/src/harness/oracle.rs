//! Textbook comparators for two fragments, written against the term syntax
//! only. Neither shares code with the main comparator.

use std::cmp::Ordering;

use crate::error::{OrdError, Result};
use crate::term::Term;

/// Cantor normal form: the exponents of `ω^e_1 + … + ω^e_k`, in written order.
#[derive(Clone, Debug)]
struct Cnf(Vec<Cnf>);

fn to_cnf(t: &Term) -> Result<Cnf> {
    match t {
        Term::Zero => Ok(Cnf(vec![])),
        Term::Phi(a, b) if a.is_zero() => Ok(Cnf(vec![to_cnf(b)?])),
        Term::Sum(ps) => {
            let mut exps = Vec::new();
            for p in ps.iter() {
                exps.extend(to_cnf(p)?.0);
            }
            Ok(Cnf(exps))
        }
        _ => Err(OrdError::domain(format!("{t} is outside the {{0, +, φ(0, ·)}} fragment"))),
    }
}

/// Drop every exponent that is smaller than some exponent to its right.
fn cnf_absorb(x: &Cnf) -> Vec<&Cnf> {
    let mut kept: Vec<&Cnf> = Vec::new();
    for e in x.0.iter().rev() {
        if kept.last().is_none_or(|m| cnf_cmp(e, m) != Ordering::Less) {
            kept.push(e);
        }
    }
    kept.reverse();
    kept
}

fn cnf_cmp(x: &Cnf, y: &Cnf) -> Ordering {
    let (xs, ys) = (cnf_absorb(x), cnf_absorb(y));
    for (a, b) in xs.iter().zip(&ys) {
        match cnf_cmp(a, b) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    xs.len().cmp(&ys.len())
}

pub fn oracle_cnf_compare(x: &Term, y: &Term) -> Result<Ordering> {
    Ok(cnf_cmp(&to_cnf(x)?, &to_cnf(y)?))
}

/// A sum of binary Veblen terms `φ(a, b)`, in written order.
#[derive(Clone, Debug)]
struct Vsum(Vec<(Vsum, Vsum)>);

fn to_vsum(t: &Term) -> Result<Vsum> {
    match t {
        Term::Zero => Ok(Vsum(vec![])),
        Term::Phi(a, b) => Ok(Vsum(vec![(to_vsum(a)?, to_vsum(b)?)])),
        Term::Sum(ps) => {
            let mut parts = Vec::new();
            for p in ps.iter() {
                parts.extend(to_vsum(p)?.0);
            }
            Ok(Vsum(parts))
        }
        _ => Err(OrdError::domain(format!("{t} is outside the {{0, +, φ}} fragment"))),
    }
}

fn single(p: &(Vsum, Vsum)) -> Vsum {
    Vsum(vec![p.clone()])
}

/// `φ(a, b)` against `φ(c, d)`.
fn principal_cmp(x: &(Vsum, Vsum), y: &(Vsum, Vsum)) -> Ordering {
    let ((a, b), (c, d)) = (x, y);
    match vsum_cmp(a, c) {
        // φ(a, b) < φ(c, d) iff b < φ(c, d), and likewise for equality
        Ordering::Less => vsum_cmp(b, &single(y)),
        Ordering::Equal => vsum_cmp(b, d),
        Ordering::Greater => vsum_cmp(&single(x), d),
    }
}

fn vsum_absorb(x: &Vsum) -> Vec<&(Vsum, Vsum)> {
    let mut kept: Vec<&(Vsum, Vsum)> = Vec::new();
    for p in x.0.iter().rev() {
        if kept.last().is_none_or(|m| principal_cmp(p, m) != Ordering::Less) {
            kept.push(p);
        }
    }
    kept.reverse();
    kept
}

fn vsum_cmp(x: &Vsum, y: &Vsum) -> Ordering {
    let (xs, ys) = (vsum_absorb(x), vsum_absorb(y));
    for (p, q) in xs.iter().zip(&ys) {
        match principal_cmp(p, q) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    xs.len().cmp(&ys.len())
}

pub fn oracle_veblen_compare(x: &Term, y: &Term) -> Result<Ordering> {
    Ok(vsum_cmp(&to_vsum(x)?, &to_vsum(y)?))
}

/// Membership in the fragment decided by [`oracle_cnf_compare`].
pub fn in_cnf_fragment(t: &Term) -> bool {
    to_cnf(t).is_ok()
}

/// Membership in the fragment decided by [`oracle_veblen_compare`].
pub fn in_veblen_fragment(t: &Term) -> bool {
    to_vsum(t).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn cnf_examples() {
        assert_eq!(oracle_cnf_compare(&t("phi(0,1)"), &t("phi(0,phi(0,1))")).unwrap(), Ordering::Less);
        assert_eq!(oracle_cnf_compare(&t("3"), &t("2")).unwrap(), Ordering::Greater);
        assert!(oracle_cnf_compare(&t("Om"), &t("1")).is_err());
        assert!(oracle_cnf_compare(&t("phi(1,0)"), &t("1")).is_err());
    }

    #[test]
    fn veblen_fixed_point() {
        assert_eq!(oracle_veblen_compare(&t("phi(1,0)"), &Term::phi_raw(Term::Zero, t("phi(1,0)"))).unwrap(), Ordering::Equal);
        assert_eq!(oracle_veblen_compare(&t("phi(1,0)"), &t("phi(0, phi(1,0) + 1)")).unwrap(), Ordering::Less);
        assert_eq!(oracle_veblen_compare(&t("phi(2,0)"), &t("phi(1, phi(1,0))")).unwrap(), Ordering::Greater);
    }
}

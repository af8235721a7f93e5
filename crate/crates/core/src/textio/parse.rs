use crate::error::{OrdError, Result};
use crate::order::Ctx;
use crate::term::arith::{self, eval_lnf};
use crate::term::lnf::{theta, Lnf};
use crate::term::{FiniteFn, Term};
use crate::textio::SourceSpan;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(u64),
    Punct(char),
}

struct Lexer;

impl Lexer {
    fn run(text: &str) -> Result<Vec<(Tok, SourceSpan)>> {
        let mut out = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let ch = text[i..].chars().next().unwrap();
            let start = i;
            if ch.is_whitespace() {
                i += ch.len_utf8();
            } else if ch.is_ascii_digit() {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let span = SourceSpan { offset: start, length: i - start };
                let n = text[start..i].parse::<u64>().map_err(|_| syntax(span, "numeral too large"))?;
                out.push((Tok::Num(n), span));
            } else if ch.is_ascii_alphabetic() {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), SourceSpan { offset: start, length: i - start }));
            } else if "(),;{}:+*".contains(ch) {
                i += 1;
                out.push((Tok::Punct(ch), SourceSpan { offset: start, length: 1 }));
            } else {
                let span = SourceSpan { offset: start, length: ch.len_utf8() };
                return Err(syntax(span, format!("unexpected character {ch:?}")));
            }
        }
        Ok(out)
    }
}

fn syntax(span: SourceSpan, message: impl Into<String>) -> OrdError {
    OrdError::Syntax { span, message: message.into() }
}

#[derive(Clone, Copy, PartialEq)]
enum View {
    Main,
    Lambda,
}

/// A parsed value in one of the two views.
enum Val {
    Main(Term),
    Lnf(Lnf),
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    end: usize,
    cx: Ctx,
}

impl Parser {
    fn new(text: &str) -> Result<Parser> {
        Ok(Parser { toks: Lexer::run(text)?, pos: 0, end: text.len(), cx: Ctx::default() })
    }

    fn span(&self) -> SourceSpan {
        self.toks
            .get(self.pos)
            .map(|t| t.1)
            .unwrap_or(SourceSpan { offset: self.end, length: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.span(), format!("expected '{c}'")))
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return Err(syntax(self.span(), "trailing input"));
        }
        Ok(())
    }

    fn main(&mut self) -> Result<Term> {
        match self.sum(View::Main)? {
            Val::Main(t) => Ok(t),
            Val::Lnf(_) => unreachable!(),
        }
    }

    fn lnf(&mut self) -> Result<Lnf> {
        match self.sum(View::Lambda)? {
            Val::Lnf(l) => Ok(l),
            Val::Main(_) => unreachable!(),
        }
    }

    fn sum(&mut self, view: View) -> Result<Val> {
        let mut parts = vec![self.atom(view)?];
        while self.eat('+') {
            parts.push(self.atom(view)?);
        }
        let cx = self.cx;
        match view {
            View::Main => {
                let ts: Vec<Term> = parts.into_iter().map(|v| self.to_main(v)).collect::<Result<_>>()?;
                Ok(Val::Main(arith::normalize_sum(&cx, &ts)?))
            }
            View::Lambda => {
                let mut acc = Lnf::zero();
                for v in parts {
                    acc = acc.add(&cx, &self.to_lnf(v)?)?;
                }
                Ok(Val::Lnf(acc))
            }
        }
    }

    fn to_main(&self, v: Val) -> Result<Term> {
        match v {
            Val::Main(t) => Ok(t),
            Val::Lnf(l) => eval_lnf(&self.cx, &Term::Lambda, &l),
        }
    }

    fn to_lnf(&self, v: Val) -> Result<Lnf> {
        match v {
            Val::Main(t) => Lnf::from_term(&self.cx, &t),
            Val::Lnf(l) => Ok(l),
        }
    }

    fn atom(&mut self, view: View) -> Result<Val> {
        let span = self.span();
        let cx = self.cx;
        let tok = self.peek().cloned().ok_or_else(|| syntax(span, "unexpected end of input"))?;
        self.pos += 1;
        let v = match tok {
            Tok::Num(n) => match view {
                View::Main => Val::Main(Term::nat(n)),
                View::Lambda => Val::Lnf(Lnf::nat(n)),
            },
            Tok::Ident(id) => match id.as_str() {
                "Om" => Val::Main(Term::Omega),
                "S" => Val::Main(Term::Stable),
                "L" => Val::Main(Term::Lambda),
                "phi" => {
                    self.expect('(')?;
                    let a = self.main()?;
                    self.expect(',')?;
                    let b = self.main()?;
                    self.expect(')')?;
                    Val::Main(arith::phi(&cx, &a, &b)?)
                }
                "reg" => {
                    self.expect('(')?;
                    let a = self.main()?;
                    self.expect(')')?;
                    Val::Main(arith::next_reg(&a))
                }
                "psi" => {
                    self.expect('(')?;
                    let sub = self.main()?;
                    self.expect(';')?;
                    let idx = self.main()?;
                    let func = if self.eat(';') { self.fnmap()? } else { FiniteFn::empty() };
                    self.expect(')')?;
                    Val::Main(Term::psi_raw(sub, func, idx))
                }
                "th" => {
                    self.expect('(')?;
                    let b = self.main()?;
                    self.expect(',')?;
                    let x = self.lnf()?;
                    self.expect(')')?;
                    let mut l = theta(&cx, &b, &x)?;
                    if self.eat('*') {
                        let cspan = self.span();
                        let coeff = match self.atom(View::Main)? {
                            Val::Main(t) => t,
                            Val::Lnf(_) => unreachable!(),
                        };
                        l = scale(l, coeff).map_err(|m| syntax(cspan, m))?;
                    }
                    Val::Lnf(l)
                }
                other => return Err(syntax(span, format!("unknown word {other:?}"))),
            },
            Tok::Punct(c) => return Err(syntax(span, format!("unexpected '{c}'"))),
        };
        Ok(match view {
            View::Main => Val::Main(self.to_main(v)?),
            View::Lambda => Val::Lnf(self.to_lnf(v)?),
        })
    }

    fn fnmap(&mut self) -> Result<FiniteFn> {
        self.expect('{')?;
        let mut entries = Vec::new();
        if !self.eat('}') {
            loop {
                let k = self.main()?;
                self.expect(':')?;
                let v = self.lnf()?;
                entries.push((k, v.to_term()));
                if self.eat('}') {
                    break;
                }
                self.expect(',')?;
            }
        }
        FiniteFn::new(&self.cx, entries)
    }
}

/// `θ̃_b(ξ)·a` from a single principal summand.
fn scale(l: Lnf, coeff: Term) -> std::result::Result<Lnf, String> {
    if coeff.is_zero() {
        return Ok(Lnf::zero());
    }
    match l.as_principal() {
        Some(t) => {
            let mut t = t.clone();
            t.coeff = coeff;
            Ok(Lnf::single(t))
        }
        None => Err("coefficient on a term that is not a single θ̃-summand".into()),
    }
}

/// Parse a term in the main view.
pub fn parse(text: &str) -> Result<Term> {
    let mut p = Parser::new(text)?;
    let t = p.main()?;
    p.finish()?;
    Ok(t)
}

/// Parse a term in the Λ-base view.
pub fn parse_lnf(text: &str) -> Result<Lnf> {
    let mut p = Parser::new(text)?;
    let t = p.lnf()?;
    p.finish()?;
    Ok(t)
}

/// Parse a finite function `{c: v, …}`.
pub fn parse_fnmap(text: &str) -> Result<FiniteFn> {
    let mut p = Parser::new(text)?;
    let f = p.fnmap()?;
    p.finish()?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse("0").unwrap(), Term::Zero);
        assert_eq!(parse(" Om ").unwrap(), Term::Omega);
        assert_eq!(parse("reg(0)").unwrap(), Term::Omega);
        assert_eq!(parse("3").unwrap(), Term::nat(3));
    }

    #[test]
    fn collapse_with_function() {
        let t = parse("psi(S; L; {0: th(1,0)})").unwrap();
        let p = t.as_psi().unwrap();
        assert_eq!(p.sub, Term::Stable);
        assert_eq!(p.idx, Term::Lambda);
        assert_eq!(p.func.entries(), &[(Term::Zero, Term::lnf_nat(1))]);
    }

    #[test]
    fn errors_carry_spans() {
        match parse("phi(0,") {
            Err(OrdError::Syntax { span, .. }) => assert_eq!(span.offset, 6),
            other => panic!("{other:?}"),
        }
        match parse("phi(0 1)") {
            Err(OrdError::Syntax { span, .. }) => assert_eq!(span, SourceSpan { offset: 6, length: 1 }),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("1 $"), Err(OrdError::Syntax { .. })));
        assert!(matches!(parse("foo"), Err(OrdError::Syntax { .. })));
    }

    #[test]
    fn theta_in_main_position_is_evaluated() {
        assert_eq!(parse("th(1,1)").unwrap(), Term::Lambda);
        assert!(parse("th(phi(0,1), 0)").is_err());
    }

    #[test]
    fn sums_normalize() {
        assert_eq!(parse("1 + phi(0,1)").unwrap(), parse("phi(0,1)").unwrap());
        assert_eq!(parse_lnf("3 + L").unwrap(), parse_lnf("L").unwrap());
    }
}

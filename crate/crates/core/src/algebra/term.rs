//! Terms over the variables `x, y, z`, written in prefix form:
//! `add(add(x, neg(y)), z)`. Constants may be written bare (`zero`) or
//! applied to nothing (`zero()`).

use std::fmt;

use super::signature::{is_identifier, Signature};
use crate::error::{Result, SimalError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// 0 = x, 1 = y, 2 = z.
    Var(usize),
    App(usize, Vec<Term>),
}

impl Term {
    pub fn parse(src: &str, sig: &Signature) -> Result<Term> {
        let mut p = Parser {
            src: src.as_bytes(),
            pos: 0,
            sig,
        };
        let t = p.term()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }

    /// Evaluates the term given an operation interpreter and values for
    /// `x, y, z`.
    pub fn eval(&self, vars: &[usize; 3], apply: &impl Fn(usize, &[usize]) -> usize) -> usize {
        match self {
            Term::Var(v) => vars[*v],
            Term::App(op, args) => {
                let vals: Vec<usize> = args.iter().map(|a| a.eval(vars, apply)).collect();
                apply(*op, &vals)
            }
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> TermDisplay<'a> {
        TermDisplay { term: self, sig }
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    sig: &'a Signature,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            Term::Var(v) => write!(f, "{}", ["x", "y", "z"][*v]),
            Term::App(op, args) => {
                write!(f, "{}", self.sig.ops()[*op].name)?;
                if args.is_empty() {
                    return Ok(());
                }
                write!(f, "(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", a.display(self.sig))?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> SimalError {
        SimalError::TermParse(format!("{msg} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        if !is_identifier(s) {
            return Err(self.error("expected identifier"));
        }
        Ok(s.to_string())
    }

    fn term(&mut self) -> Result<Term> {
        let name = self.ident()?;
        if let Some(v) = ["x", "y", "z"].iter().position(|&n| n == name) {
            return Ok(Term::Var(v));
        }
        let op = self
            .sig
            .index_of(&name)
            .ok_or_else(|| SimalError::TermParse(format!("unknown operation `{name}`")))?;
        let mut args = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            if self.peek() == Some(b')') {
                self.pos += 1;
            } else {
                loop {
                    args.push(self.term()?);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected `,` or `)`")),
                    }
                }
            }
        }
        let arity = self.sig.arity(op);
        if args.len() != arity {
            return Err(SimalError::TermParse(format!(
                "`{name}` has arity {arity} but was applied to {} arguments",
                args.len()
            )));
        }
        Ok(Term::App(op, args))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_group_term() {
        let sig = Signature::abelian_group();
        let t = Term::parse("add(add(x, neg(y)), z)", &sig).unwrap();
        assert_eq!(t.display(&sig).to_string(), "add(add(x,neg(y)),z)");
        let c = Term::parse("zero()", &sig).unwrap();
        assert_eq!(c, Term::App(2, vec![]));
        assert_eq!(Term::parse("zero", &sig).unwrap(), c);
    }

    #[test]
    fn rejects_bad_terms() {
        let sig = Signature::abelian_group();
        for bad in ["add(x)", "mul(x,y)", "add(x,y", "add(x,y) z", "", "neg(w)"] {
            assert!(Term::parse(bad, &sig).is_err(), "{bad}");
        }
    }

    #[test]
    fn evaluates_with_interpreter() {
        let sig = Signature::abelian_group();
        let t = Term::parse("add(add(x,neg(y)),z)", &sig).unwrap();
        let z5 = |op: usize, a: &[usize]| match op {
            0 => (a[0] + a[1]) % 5,
            1 => (5 - a[0]) % 5,
            _ => 0,
        };
        assert_eq!(t.eval(&[1, 3, 4], &z5), 2);
    }
}

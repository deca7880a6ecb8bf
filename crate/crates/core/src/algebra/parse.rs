//! Parser for polynomial expressions such as `3/2*x^2*y - (x + 1)^3`.
//!
//! Grammar: sums of products of powers of atoms; an atom is a number, a
//! variable or a parenthesised expression. Division is allowed by nonzero
//! constants only.

use super::poly::MultiPoly;
use super::ring_elem::RingElem;
use super::scalar::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Malformed(format!("unexpected character {c:?} in expression {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: Ring,
    names: &'a [&'a str],
    tokens: Vec<Token>,
    pos: usize,
    source: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Malformed(format!("{what} at token {} of expression {:?}", self.pos + 1, self.source))
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let negate = self.eat('-');
        if !negate {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg_ref();
        }
        loop {
            if self.eat('+') {
                acc = acc.add_ref(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub_ref(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul_ref(&self.power()?);
            } else if self.eat('/') {
                let d = self.power()?;
                let c = match d.terms().iter().next() {
                    Some((e, c)) if d.terms().len() == 1 && e.iter().all(|&k| k == 0) => c.clone(),
                    _ => return Err(self.err("division by a non-constant")),
                };
                let inv = c.inv().ok_or_else(|| self.err("division by zero"))?;
                acc = acc.scale(&inv);
            } else if matches!(self.peek(), Some(Token::Ident(_)) | Some(Token::Op('('))) {
                // juxtaposition, as in `2x`
                acc = acc.mul_ref(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let k: u32 = n.parse().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow_u32(k))
                }
                _ => Err(self.err("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let n = self.names.len();
        match self.peek().cloned() {
            Some(Token::Num(s)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.ring.parse_scalar(&s)?, n))
            }
            Some(Token::Ident(id)) => {
                self.pos += 1;
                match self.names.iter().position(|v| *v == id) {
                    Some(i) => Ok(MultiPoly::var(self.ring, n, i)),
                    None => Err(Error::Malformed(format!(
                        "unknown variable {id:?} in expression {:?} (known: {})",
                        self.source,
                        self.names.join(", ")
                    ))),
                }
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

/// Parse `s` as a polynomial in the variables `names`, in that order.
pub fn parse_poly(ring: Ring, names: &[&str], s: &str) -> Result<MultiPoly> {
    let mut p = Parser { ring, names, tokens: tokenize(s)?, pos: 0, source: s };
    if p.tokens.is_empty() {
        return Err(Error::Malformed("empty expression".into()));
    }
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(s: &str) -> String {
        let p = parse_poly(Ring::Rationals, &["x", "y"], s).unwrap();
        p.display_with(&["x".to_string(), "y".to_string()])
    }

    #[test]
    fn arithmetic() {
        assert_eq!(show("x^2 + 1"), "1 + x^2");
        assert_eq!(show("(x+y)^2 - 2*x*y"), "x^2 + y^2");
        assert_eq!(show("3/2 x + 1"), "1 + 3/2*x");
        assert_eq!(show("-x*(y - x)"), "x^2 - x*y");
    }

    #[test]
    fn prime_field_reduces() {
        let p = parse_poly(Ring::PrimeField(5), &["t"], "7*t + 1/2").unwrap();
        assert_eq!(p.display_with(&["t".to_string()]), "3 + 2*t");
    }

    #[test]
    fn rejects_bad_input() {
        for s in ["", "x +", "z", "x/y", "x^y", "(x", "x)", "1/0", "x $ y"] {
            assert!(parse_poly(Ring::Rationals, &["x", "y"], s).is_err(), "{s}");
        }
    }
}

//! Polynomial expression parser: `+ - * ^`, integer coefficients, parentheses.

use thiserror::Error;

use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at column {}: {message}", .pos + 1)]
pub struct PolyParseError {
    /// Byte offset into the parsed text.
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, PolyParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = s[start..i]
                .parse::<u64>()
                .map_err(|_| PolyParseError { pos: start, message: "integer literal too large".into() })?;
            out.push((start, Tok::Num(n)));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*^()".contains(ch) {
            out.push((i, Tok::Sym(ch)));
            i += 1;
        } else {
            let c = s[i..].chars().next().unwrap();
            return Err(PolyParseError { pos: i, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a [String],
    weights: &'a [u32],
    field: &'a PrimeField,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyParseError> {
        Err(PolyParseError { pos: self.pos(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Poly, PolyParseError> {
        let mut acc = self.term()?;
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek() {
            let c = *c;
            self.at += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t, self.field) } else { acc.sub(&t, self.field) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, PolyParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Sym('*')) = self.peek() {
            self.at += 1;
            let t = self.unary()?;
            acc = acc.mul(&t, self.field);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, PolyParseError> {
        match self.peek() {
            Some(Tok::Sym('-')) => {
                self.at += 1;
                Ok(self.unary()?.neg(self.field))
            }
            Some(Tok::Sym('+')) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, PolyParseError> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            self.at += 1;
            match self.peek() {
                Some(Tok::Num(n)) if *n <= u16::MAX as u64 => {
                    let n = *n as u32;
                    self.at += 1;
                    Ok(base.pow(n, self.field))
                }
                Some(Tok::Num(_)) => self.err("exponent too large"),
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, PolyParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                let c = (n % self.field.characteristic() as u64) as u32;
                Ok(Poly::constant(c))
            }
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    self.at += 1;
                    Ok(Poly::term(Monomial::variable(i, self.weights), 1))
                }
                None => self.err(format!("undeclared variable '{name}'")),
            },
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::Sym(')')) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Parses `text` as a polynomial in `vars` with the given weights.
pub fn parse_poly(text: &str, vars: &[String], weights: &[u32], field: &PrimeField) -> Result<Poly, PolyParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.len(), vars, weights, field };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    fn parse(s: &str) -> Result<Poly, PolyParseError> {
        parse_poly(s, &vars(), &[2, 2, 1], &PrimeField::new(32003).unwrap())
    }

    #[test]
    fn parses_and_displays_round_trip() {
        let f = PrimeField::new(32003).unwrap();
        let p = parse("x^2 + y^2 + z^4").unwrap();
        let shown = p.display(&vars(), &f).to_string();
        assert_eq!(parse(&shown).unwrap(), p);
        let q = parse("-(x - 3*y)*(x + 3*y) - 9*y^2").unwrap();
        assert_eq!(q, parse("-x^2").unwrap());
    }

    #[test]
    fn reports_undeclared_variables_with_position() {
        let e = parse("x^2 + w").unwrap_err();
        assert_eq!(e.pos, 6);
        assert!(e.message.contains("'w'"));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse("").is_err());
        assert!(parse("x^").is_err());
        assert!(parse("(x + y").is_err());
        assert!(parse("x y").is_err());
        assert!(parse("x $ y").is_err());
    }
}

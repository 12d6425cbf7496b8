//! Polynomial expressions in t, s1 and s2.
//!
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := number | 't' | 's1' | 's2' | '(' expr ')'
//!
//! A leading sign is allowed on a term.  Numbers are decimals or p/q
//! rationals; '/' is accepted only inside such a literal.

use minkowski_curves::families::model::{MultiPoly, Var};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Serialize)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset,
            message: message.into(),
        })
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

    fn found(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("found {:?}", c as char),
            None => "found end of input".into(),
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.signed_term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn signed_term(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.term()?.scale(-1.0))
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()
            }
            _ => self.term(),
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => return self.err(self.pos, "division is only allowed inside a p/q literal"),
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' || c == b'.' => {
                    return self.err(self.pos, "implicit multiplication is not allowed; use '*'")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.uint()?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            let f = self.found();
            return self.err(start, format!("expected a non-negative integer exponent, {f}"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match s.parse::<u32>() {
            Ok(n) if n <= 64 => Ok(n),
            _ => self.err(start, "exponent too large"),
        }
    }

    fn base(&mut self) -> Result<MultiPoly, ParseError> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return self.err(self.pos, "unexpected end of input"),
        };
        let c = self.src[start];
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            if self.peek() != Some(b')') {
                let f = self.found();
                return self.err(self.pos, format!("expected ')', {f}"));
            }
            self.pos += 1;
            return Ok(e);
        }
        if c.is_ascii_digit() || c == b'.' {
            return self.number().map(MultiPoly::constant);
        }
        if c.is_ascii_alphabetic() {
            let mut end = start;
            while end < self.src.len() && self.src[end].is_ascii_alphanumeric() {
                end += 1;
            }
            let word = std::str::from_utf8(&self.src[start..end]).expect("ascii");
            let v = match word {
                "t" => Var::T,
                "s1" => Var::S1,
                "s2" => Var::S2,
                _ => return self.err(start, format!("unknown name {word:?}; only t, s1 and s2 are allowed")),
            };
            self.pos = end;
            return Ok(MultiPoly::var(v));
        }
        self.err(start, format!("expected a number, t, s1, s2 or '(', found {:?}", c as char))
    }

    fn decimal(&mut self) -> Result<f64, ParseError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut n = digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            return self.err(start, "malformed number");
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = save;
            }
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        s.parse::<f64>().or_else(|_| self.err(start, "malformed number"))
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        let start = self.pos;
        let p = self.decimal()?;
        if self.src.get(self.pos) != Some(&b'/') {
            return Ok(p);
        }
        let slash = self.pos;
        let is_int = |s: &[u8]| s.iter().all(u8::is_ascii_digit);
        if !is_int(&self.src[start..slash]) {
            return self.err(start, "rational literals need integer numerator and denominator");
        }
        self.pos += 1;
        let qstart = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if qstart == self.pos {
            return self.err(qstart, "expected an integer denominator");
        }
        let q: f64 = std::str::from_utf8(&self.src[qstart..self.pos]).expect("ascii").parse().expect("digits");
        if q == 0.0 {
            return self.err(qstart, "zero denominator");
        }
        Ok(p / q)
    }
}

/// Parse a polynomial expression.
pub fn parse_expr(text: &str) -> Result<MultiPoly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    if !text.is_ascii() {
        let offset = text.char_indices().find(|(_, c)| !c.is_ascii()).map_or(0, |(i, _)| i);
        return p.err(offset, "non-ASCII character");
    }
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected {:?}", c as char));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[((u32, u32, u32), f64)]) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for &((i, j, k), c) in terms {
            let m = MultiPoly::var(Var::T)
                .pow(i)
                .mul(&MultiPoly::var(Var::S1).pow(j))
                .mul(&MultiPoly::var(Var::S2).pow(k));
            p = p.add(&m.scale(c));
        }
        p
    }

    #[test]
    fn family_components() {
        assert_eq!(parse_expr("t^4 + s1*t^2").unwrap(), poly(&[((4, 0, 0), 1.0), ((2, 1, 0), 1.0)]));
        assert_eq!(
            parse_expr("(1+s2)*t^2 + s1*t + t^3").unwrap(),
            poly(&[((2, 0, 0), 1.0), ((2, 0, 1), 1.0), ((1, 1, 0), 1.0), ((3, 0, 0), 1.0)])
        );
    }

    #[test]
    fn literals_and_signs() {
        assert_eq!(parse_expr("-1/4*t^2 + 0.5").unwrap(), poly(&[((2, 0, 0), -0.25), ((0, 0, 0), 0.5)]));
        assert_eq!(parse_expr("2e-3*t").unwrap(), poly(&[((1, 0, 0), 2e-3)]));
        assert_eq!(parse_expr("(t - 1)^2").unwrap(), poly(&[((2, 0, 0), 1.0), ((1, 0, 0), -2.0), ((0, 0, 0), 1.0)]));
        assert!(parse_expr("t - t").unwrap().is_zero());
    }

    #[test]
    fn errors_carry_offsets() {
        let offset = |s: &str| parse_expr(s).unwrap_err().offset;
        assert_eq!(offset("t^^2"), 2);
        assert_eq!(offset("2t"), 1);
        assert_eq!(offset("t/2"), 1);
        assert_eq!(offset("t^-1"), 2);
        assert_eq!(offset("x + 1"), 0);
        assert_eq!(offset("(t + 1"), 6);
        assert_eq!(offset("1/0"), 2);
        assert_eq!(offset("t )"), 2);
        assert_eq!(offset(""), 0);
    }
}

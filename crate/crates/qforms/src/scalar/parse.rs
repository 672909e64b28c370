//! Parser for the human-readable fraction grammar used in reports and
//! test fixtures, e.g. `(t^4 - 1)/(t^2 + 1)` or `2*t^-3 + 1/2`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;

use super::{LaurentPoly, Scalar};
use crate::error::QError;

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    vars: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.input.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> QError {
        QError::Parse(format!("{msg} at byte {}", self.pos))
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Scalar, QError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor (('*' | '/') factor)*
    fn term(&mut self) -> Result<Scalar, QError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = acc.div(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // factor := ['-'] atom ['^' signed-int]
    fn factor(&mut self) -> Result<Scalar, QError> {
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.signed_int()?;
            let e: i32 = e.try_into().map_err(|_| self.err("exponent overflow"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    // atom := '(' expr ')' | var | integer
    fn atom(&mut self) -> Result<Scalar, QError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(Scalar::var(self.vars, 0))
            }
            Some(b's') => {
                self.pos += 1;
                if self.vars < 2 {
                    return Err(self.err("variable s in one-variable context"));
                }
                Ok(Scalar::var(self.vars, 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.unsigned_int()?;
                Ok(Scalar::from_poly(LaurentPoly::constant(
                    self.vars,
                    BigRational::from_integer(n),
                )))
            }
            _ => Err(self.err("expected atom")),
        }
    }

    fn unsigned_int(&mut self) -> Result<BigInt, QError> {
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        s.parse::<BigInt>().map_err(|_| self.err("bad integer"))
    }

    fn signed_int(&mut self) -> Result<BigInt, QError> {
        let neg = self.eat(b'-');
        let n = self.unsigned_int()?;
        Ok(if neg { -n } else { n })
    }
}

/// Parse a scalar expression over `vars` variables (1 or 2).
pub fn parse_scalar(input: &str, vars: usize) -> Result<Scalar, QError> {
    let mut p = Parser { input: input.as_bytes(), pos: 0, vars };
    let r = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    let _ = BigRational::one();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fraction() {
        let x = parse_scalar("(t^4 - 1)/(t^2 + 1)", 1).unwrap();
        let y = parse_scalar("t^2 - 1", 1).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn parse_laurent() {
        let x = parse_scalar("t^-1 * t", 1).unwrap();
        assert!(x.is_one());
    }

    #[test]
    fn display_parse_round_trip() {
        let x = parse_scalar("(2*t^3 + 1)/(3*t^2 - t + 5)", 1).unwrap();
        let y = parse_scalar(&x.to_string(), 1).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn reject_garbage() {
        assert!(parse_scalar("t +", 1).is_err());
        assert!(parse_scalar("s", 1).is_err());
    }
}

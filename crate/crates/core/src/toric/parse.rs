//! ASCII syntax for Laurent polynomials: `y1*y2^-2 - 3/2*(y1 + 1)^2`.
//!
//! Variables are `y1..yk` unless other names are supplied. Negative
//! exponents are allowed on monomials only; division only by constants.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_laurent(src: &str, nvars: usize) -> Result<LaurentPoly, ParseError> {
    parse_laurent_named(src, &LaurentPoly::default_names(nvars))
}

pub fn parse_laurent_named(src: &str, names: &[String]) -> Result<LaurentPoly, ParseError> {
    let mut p = Parser { chars: src.chars().collect(), pos: 0, names };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err(format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(out)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { column: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = if self.eat('-') { self.term()?.scale(&-BigRational::one()) } else { self.term()? };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.power()?;
                let c = constant_value(&d).ok_or_else(|| ParseError {
                    column: at + 1,
                    message: "division by a non-constant".into(),
                })?;
                if c.is_zero() {
                    return Err(ParseError { column: at + 1, message: "division by zero".into() });
                }
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<LaurentPoly, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.pos;
        let neg = self.eat('-');
        let k = self.integer()?;
        let k: u32 = k.try_into().map_err(|_| ParseError { column: at + 1, message: "exponent too large".into() })?;
        if !neg {
            return Ok(base.pow(k));
        }
        invert_monomial(&base)
            .map(|inv| inv.pow(k))
            .ok_or_else(|| ParseError { column: at + 1, message: "negative power of a non-monomial".into() })
    }

    fn atom(&mut self) -> Result<LaurentPoly, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(LaurentPoly::constant(self.nvars(), BigRational::from_integer(v)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(LaurentPoly::var(self.nvars(), i)),
                    None => Err(ParseError { column: start + 1, message: format!("unknown variable '{name}'") }),
                }
            }
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }
}

fn constant_value(p: &LaurentPoly) -> Option<BigRational> {
    if p.is_zero() {
        return Some(BigRational::zero());
    }
    let mut it = p.terms();
    let (e, c) = it.next()?;
    (it.next().is_none() && e.iter().all(|&x| x == 0)).then(|| c.clone())
}

fn invert_monomial(p: &LaurentPoly) -> Option<LaurentPoly> {
    let mut it = p.terms();
    let (e, c) = it.next()?;
    if it.next().is_some() {
        return None;
    }
    Some(LaurentPoly::monomial(e.iter().map(|x| -x).collect(), c.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_display() {
        for s in ["y1*y2^2 - 3*y1^-2", "-1/2*y1 + 7", "y1^3 - y2^-1*y3"] {
            let p = parse_laurent(s, 3).unwrap();
            assert_eq!(parse_laurent(&p.to_string(), 3).unwrap(), p);
        }
    }

    #[test]
    fn products_and_powers() {
        let p = parse_laurent("(y1 - 1)*(y1 + 1)", 1).unwrap();
        assert_eq!(p, parse_laurent("y1^2 - 1", 1).unwrap());
        let q = parse_laurent("(2*y1*y2)^-2", 2).unwrap();
        assert_eq!(q.to_string(), "1/4*y1^-2*y2^-2");
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_laurent("y1 + y9", 2).unwrap_err();
        assert_eq!(e.column, 6);
        let e = parse_laurent("(y1 + 1)^-1", 1).unwrap_err();
        assert!(e.message.contains("non-monomial"));
        assert!(parse_laurent("y1 +", 1).is_err());
        assert!(parse_laurent("y1 / y1", 1).is_err());
    }
}

//! Infix text grammar for polynomials and rational functions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//! Variables are limited to `a b c z t d n`.

use num_bigint::BigInt;

use super::poly::{Polynomial, Var};
use super::ratfunc::RationalFunction;
use super::rational::Rational;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, bytes: src.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        while let Some(ch) = self.peek() {
            match ch {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(Error::ZeroDenominator);
                    }
                    acc = acc.checked_div(&d)?;
                }
                Some(ch) if ch == b'(' || ch.is_ascii_alphanumeric() => {
                    acc = &acc * &self.unary()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: i32 = e.try_into().map_err(|_| Error::Parse {
                offset: self.pos,
                message: "exponent too large".into(),
            })?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(ch) if ch.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RationalFunction::constant(Rational::from_integer(n)))
            }
            Some(ch) if ch.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let word = &self.src[start..self.pos];
                // a run of letters like "az" is read as the product a*z
                let mut acc = RationalFunction::one();
                for ch in word.chars() {
                    match Var::from_char(ch) {
                        Some(v) => acc = &acc * &RationalFunction::var(v),
                        None => {
                            self.pos = start;
                            return self.err(format!("unknown symbol {word:?}"));
                        }
                    }
                }
                Ok(acc)
            }
            Some(ch) => self.err(format!("unexpected character {:?}", ch as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_rational_function(src: &str) -> Result<RationalFunction> {
    let mut p = Parser::new(src);
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

pub fn parse_polynomial(src: &str) -> Result<Polynomial> {
    let f = parse_rational_function(src)?;
    if !f.is_polynomial() {
        return Err(Error::Parse {
            offset: 0,
            message: format!("not a polynomial: {src:?}"),
        });
    }
    Ok(f.into_parts().0)
}

/// Parses a value that must be a rational constant.
pub fn parse_constant(src: &str) -> Result<Rational> {
    let f = parse_rational_function(src)?;
    f.constant_value().ok_or_else(|| Error::Parse {
        offset: 0,
        message: format!("not a constant: {src:?}"),
    })
}

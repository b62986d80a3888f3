//! Closed-form expressions in `t`: rational constants, π, Γ, powers, square
//! roots, CM products and hypergeometric series.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := integer | '(' ['-'] integer ['/' integer] ')' | '(' expr ')'
//!        | 't' | 'pi' | 'gamma(' expr ')' | 'sqrt(' expr ')' | 'cm(' integer ')'
//!        | 'hyp([' exprs '], [' exprs '], ' expr ')'
//! ```
//! A parenthesized signed fraction is a single constant, so `Display`
//! output parses back to the same tree.

use std::fmt;
use std::ops;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bigfloat::BigFloat;
use super::cm::cm_product;
use super::gamma::gamma;
use super::hyper::{hyper_value, HyperValue};
use crate::arith::rational::{fmt_rational, to_i64};
use crate::arith::{LinearForm, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    T,
    Pi,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Gamma(Box<Expr>),
    Sqrt(Box<Expr>),
    /// `∏_{j=1}^{N-1} Γ(j/N)^{(j/N)}`
    Cm(i64),
    Hyp { upper: Vec<Expr>, lower: Vec<Expr>, z: Box<Expr> },
}

impl Expr {
    pub fn num(r: Rational) -> Expr {
        Expr::Num(r)
    }

    pub fn int(n: i64) -> Expr {
        Expr::Num(Rational::from_integer(n.into()))
    }

    pub fn frac(n: i64, d: i64) -> Expr {
        Expr::Num(Rational::new(n.into(), d.into()))
    }

    pub fn gamma(x: Expr) -> Expr {
        Expr::Gamma(Box::new(x))
    }

    pub fn sqrt(x: Expr) -> Expr {
        Expr::Sqrt(Box::new(x))
    }

    pub fn pow(b: Expr, e: Expr) -> Expr {
        Expr::Pow(Box::new(b), Box::new(e))
    }

    pub fn hyp(upper: Vec<Expr>, lower: Vec<Expr>, z: Expr) -> Expr {
        Expr::Hyp { upper, lower, z: Box::new(z) }
    }

    /// `slope * t + constant`, dropping zero parts.
    pub fn linear(slope: &Rational, constant: &Rational) -> Expr {
        let tpart = if slope.is_zero() {
            None
        } else if slope.is_one() {
            Some(Expr::T)
        } else if *slope == -Rational::one() {
            Some(Expr::Neg(Box::new(Expr::T)))
        } else {
            Some(Expr::Num(slope.clone()) * Expr::T)
        };
        match tpart {
            None => Expr::Num(constant.clone()),
            Some(tp) if constant.is_zero() => tp,
            Some(tp) if constant.is_negative() => tp - Expr::Num(-constant.clone()),
            Some(tp) => tp + Expr::Num(constant.clone()),
        }
    }

    /// Linear forms with a rational constant part.
    pub fn from_linear(l: &LinearForm) -> Result<Expr> {
        let c = l
            .rational_constant()
            .ok_or_else(|| Error::Eval(format!("symbolic constant in {l}")))?;
        Ok(Expr::linear(&l.slope, &c))
    }

    pub fn product(factors: impl IntoIterator<Item = Expr>) -> Expr {
        factors.into_iter().reduce(|a, b| a * b).unwrap_or_else(|| Expr::int(1))
    }

    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { bytes: src.as_bytes(), pos: 0 };
        let e = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(e)
    }

    /// Exact value when the expression is rational at `t`.
    pub fn eval_exact(&self, t: &Rational) -> Option<Rational> {
        Some(match self {
            Expr::Num(r) => r.clone(),
            Expr::T => t.clone(),
            Expr::Add(a, b) => a.eval_exact(t)? + b.eval_exact(t)?,
            Expr::Sub(a, b) => a.eval_exact(t)? - b.eval_exact(t)?,
            Expr::Mul(a, b) => a.eval_exact(t)? * b.eval_exact(t)?,
            Expr::Div(a, b) => {
                let d = b.eval_exact(t)?;
                if d.is_zero() {
                    return None;
                }
                a.eval_exact(t)? / d
            }
            Expr::Neg(a) => -a.eval_exact(t)?,
            Expr::Pow(b, e) => {
                let e = e.eval_exact(t)?;
                if !e.is_integer() || e.abs() > Rational::from_integer(100_000.into()) {
                    return None;
                }
                let b = b.eval_exact(t)?;
                let n = to_i64(&e)?;
                if b.is_zero() && n < 0 {
                    return None;
                }
                crate::arith::rational::pow(&b, n)
            }
            _ => return None,
        })
    }

    pub fn contains_hyp(&self) -> bool {
        match self {
            Expr::Hyp { .. } => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.contains_hyp() || b.contains_hyp()
            }
            Expr::Neg(a) | Expr::Gamma(a) | Expr::Sqrt(a) => a.contains_hyp(),
            _ => false,
        }
    }

    /// Numeric value at `t` with `prec` bits. Terminating series stay exact
    /// until combined with irrational parts.
    pub fn eval(&self, t: &Rational, prec: usize) -> Result<BigFloat> {
        let w = prec + 32;
        Ok(self.eval_at(t, w)?.round_to(prec))
    }

    fn exact_arg(e: &Expr, t: &Rational, what: &str) -> Result<Rational> {
        e.eval_exact(t).ok_or_else(|| Error::Eval(format!("{what} argument {e} is not rational at t={}", fmt_rational(t))))
    }

    fn eval_at(&self, t: &Rational, w: usize) -> Result<BigFloat> {
        if let Some(r) = self.eval_exact(t) {
            return Ok(BigFloat::from_rational(&r, w));
        }
        Ok(match self {
            Expr::Num(_) | Expr::T => unreachable!("handled exactly"),
            Expr::Pi => BigFloat::pi(w),
            Expr::Add(a, b) => &a.eval_at(t, w)? + &b.eval_at(t, w)?,
            Expr::Sub(a, b) => &a.eval_at(t, w)? - &b.eval_at(t, w)?,
            Expr::Mul(a, b) => &a.eval_at(t, w)? * &b.eval_at(t, w)?,
            Expr::Div(a, b) => {
                let d = b.eval_at(t, w)?;
                if d.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                &a.eval_at(t, w)? / &d
            }
            Expr::Neg(a) => -a.eval_at(t, w)?,
            Expr::Pow(b, e) => {
                let base = b.eval_at(t, w)?;
                match e.eval_exact(t) {
                    Some(n) if n.is_integer() => base.powi(to_i64(&n).ok_or_else(|| Error::Eval("exponent too large".into()))?),
                    _ => {
                        if base.is_negative() || base.is_zero() {
                            return Err(Error::Eval(format!("non-positive base in {self}")));
                        }
                        base.pow(&e.eval_at(t, w)?)
                    }
                }
            }
            Expr::Gamma(x) => gamma(&Self::exact_arg(x, t, "gamma")?, w)?,
            Expr::Sqrt(x) => {
                let v = x.eval_at(t, w)?;
                if v.is_negative() {
                    return Err(Error::Eval(format!("square root of a negative number in {self}")));
                }
                v.sqrt()
            }
            Expr::Cm(n) => cm_product(*n, w)?,
            Expr::Hyp { upper, lower, z } => {
                let up: Vec<Rational> = upper.iter().map(|e| Self::exact_arg(e, t, "series")).collect::<Result<_>>()?;
                let lo: Vec<Rational> = lower.iter().map(|e| Self::exact_arg(e, t, "series")).collect::<Result<_>>()?;
                let zv = Self::exact_arg(z, t, "series")?;
                match hyper_value(&up, &lo, &zv, w)? {
                    HyperValue::Exact(r) => BigFloat::from_rational(&r, w),
                    HyperValue::Approx(x) => x,
                }
            }
        })
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.prec() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

fn list(f: &mut fmt::Formatter<'_>, xs: &[Expr]) -> fmt::Result {
    write!(f, "[")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "]")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => {
                if r.is_integer() && !r.is_negative() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "({})", fmt_rational(r))
                }
            }
            Expr::T => write!(f, "t"),
            Expr::Pi => write!(f, "pi"),
            Expr::Add(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " + ")?;
                wrap(f, b, 2)
            }
            Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " - ")?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "/")?;
                wrap(f, b, 3)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 3)
            }
            Expr::Pow(b, e) => {
                wrap(f, b, 5)?;
                write!(f, "^")?;
                wrap(f, e, 3)
            }
            Expr::Gamma(x) => write!(f, "gamma({x})"),
            Expr::Sqrt(x) => write!(f, "sqrt({x})"),
            Expr::Cm(n) => write!(f, "cm({n})"),
            Expr::Hyp { upper, lower, z } => {
                write!(f, "hyp(")?;
                list(f, upper)?;
                write!(f, ", ")?;
                list(f, lower)?;
                write!(f, ", {z})")
            }
        }
    }
}

macro_rules! expr_op {
    ($tr:ident, $m:ident, $v:ident) => {
        impl ops::$tr for Expr {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                Expr::$v(Box::new(self), Box::new(o))
            }
        }
    };
}

expr_op!(Add, add, Add);
expr_op!(Sub, sub, Sub);
expr_op!(Mul, mul, Mul);
expr_op!(Div, div, Div);

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl Serialize for Expr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Expr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Expr, D::Error> {
        let s = String::deserialize(d)?;
        Expr::parse(&s).map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", ch as char))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = acc / self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            return Ok(Expr::pow(base, self.unary()?));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.peek();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).unwrap().parse().unwrap())
    }

    /// `(-p/q)` style constant, restoring the position when it does not match.
    fn try_constant(&mut self) -> Option<Rational> {
        let save = self.pos;
        let attempt = (|| -> Result<Rational> {
            self.expect(b'(')?;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            if !self.peek().map_or(false, |c| c.is_ascii_digit()) {
                return self.err("not a constant");
            }
            let n = self.integer()?;
            let d = if self.peek() == Some(b'/') {
                self.pos += 1;
                if !self.peek().map_or(false, |c| c.is_ascii_digit()) {
                    return self.err("not a constant");
                }
                self.integer()?
            } else {
                BigInt::one()
            };
            self.expect(b')')?;
            if d.is_zero() {
                return self.err("zero denominator");
            }
            let r = Rational::new(n, d);
            Ok(if neg { -r } else { r })
        })();
        match attempt {
            Ok(r) => Some(r),
            Err(_) => {
                self.pos = save;
                None
            }
        }
    }

    fn word(&mut self) -> String {
        self.peek();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn list(&mut self) -> Result<Vec<Expr>> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.peek() == Some(b']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return self.err("expected ',' or ']'"),
            }
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                if let Some(r) = self.try_constant() {
                    return Ok(Expr::Num(r));
                }
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Num(Rational::from_integer(self.integer()?))),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let w = self.word();
                match w.as_str() {
                    "t" => Ok(Expr::T),
                    "pi" => Ok(Expr::Pi),
                    "gamma" | "sqrt" => {
                        self.expect(b'(')?;
                        let x = self.expr()?;
                        self.expect(b')')?;
                        Ok(if w == "gamma" { Expr::gamma(x) } else { Expr::sqrt(x) })
                    }
                    "cm" => {
                        self.expect(b'(')?;
                        let n = self.integer()?;
                        self.expect(b')')?;
                        let n: i64 = n.try_into().map_err(|_| Error::Parse { offset: self.pos, message: "cm index too large".into() })?;
                        Ok(Expr::Cm(n))
                    }
                    "hyp" => {
                        self.expect(b'(')?;
                        let upper = self.list()?;
                        self.expect(b',')?;
                        let lower = self.list()?;
                        self.expect(b',')?;
                        let z = self.expr()?;
                        self.expect(b')')?;
                        Ok(Expr::hyp(upper, lower, z))
                    }
                    _ => {
                        self.pos = start;
                        self.err(format!("unknown symbol '{w}'"))
                    }
                }
            }
            _ => self.err("unexpected input"),
        }
    }
}

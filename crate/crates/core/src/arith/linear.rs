//! Linear forms `c + s*t` in the distinguished variable `t`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::parse::parse_polynomial;
use super::poly::{Polynomial, Var};
use super::rational::{fmt_rational, Rational};
use crate::error::{Error, Result};

/// `constant + slope * t`; the constant may involve other symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub constant: Polynomial,
    pub slope: Rational,
}

impl LinearForm {
    pub fn new(constant: Rational, slope: Rational) -> Self {
        LinearForm { constant: Polynomial::constant(constant), slope }
    }

    pub fn constant(c: Rational) -> Self {
        LinearForm::new(c, Rational::zero())
    }

    pub fn symbolic(constant: Polynomial, slope: Rational) -> Self {
        debug_assert!(!constant.contains(Var::T));
        LinearForm { constant, slope }
    }

    /// The rational constant, when no other symbol appears.
    pub fn rational_constant(&self) -> Option<Rational> {
        self.constant.constant_value()
    }

    pub fn to_polynomial(&self) -> Polynomial {
        &self.constant + &Polynomial::var(Var::T).scale(&self.slope)
    }

    /// Value at `t = x`.
    pub fn at(&self, x: &Rational) -> Polynomial {
        &self.constant + &Polynomial::constant(&self.slope * x)
    }

    /// Value at `t = x` when the constant is rational.
    pub fn at_rational(&self, x: &Rational) -> Option<Rational> {
        self.rational_constant().map(|c| c + &self.slope * x)
    }

    /// `t -> t + h`
    pub fn shifted(&self, h: &Rational) -> LinearForm {
        LinearForm {
            constant: &self.constant + &Polynomial::constant(&self.slope * h),
            slope: self.slope.clone(),
        }
    }

    pub fn add_constant(&self, c: &Rational) -> LinearForm {
        LinearForm {
            constant: &self.constant + &Polynomial::constant(c.clone()),
            slope: self.slope.clone(),
        }
    }

    pub fn from_polynomial(p: &Polynomial) -> Result<LinearForm> {
        let cs = p.coeffs_in(Var::T);
        if cs.len() > 2 {
            return Err(Error::Parse {
                offset: 0,
                message: format!("not linear in t: {p}"),
            });
        }
        let slope = match cs.get(1) {
            None => Rational::zero(),
            Some(c) => c.constant_value().ok_or_else(|| Error::Parse {
                offset: 0,
                message: format!("slope of t must be rational: {p}"),
            })?,
        };
        Ok(LinearForm { constant: cs[0].clone(), slope })
    }

    pub fn parse(src: &str) -> Result<LinearForm> {
        LinearForm::from_polynomial(&parse_polynomial(src)?)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slope = if self.slope.is_zero() {
            String::new()
        } else if self.slope.is_one() {
            "t".to_string()
        } else if self.slope == -Rational::one() {
            "-t".to_string()
        } else {
            let s = fmt_rational(&self.slope);
            if s.contains('/') {
                format!("({s})*t")
            } else {
                format!("{s}*t")
            }
        };
        let constant = if self.constant.is_zero() { String::new() } else { self.constant.to_string() };
        match (slope.is_empty(), constant.is_empty()) {
            (true, true) => write!(f, "0"),
            (true, false) => write!(f, "{constant}"),
            (false, true) => write!(f, "{slope}"),
            (false, false) => {
                if let Some(c) = self.rational_constant() {
                    if c.is_negative() {
                        return write!(f, "{slope}-{}", fmt_rational(&-c));
                    }
                }
                if self.constant.num_terms() > 1 {
                    write!(f, "{slope}+({constant})")
                } else {
                    write!(f, "{slope}+{constant}")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn parse_and_display() {
        for src in ["2*t+1/3", "-t", "t+5/6", "(1/2)*t-1/3", "3/2", "t+a"] {
            let l = LinearForm::parse(src).unwrap();
            assert_eq!(LinearForm::parse(&l.to_string()).unwrap(), l, "{src}");
        }
        let l = LinearForm::parse("2t+1/3").unwrap();
        assert_eq!(l, LinearForm::new(rat(1, 3), int(2)));
        assert!(LinearForm::parse("t^2").is_err());
        assert!(LinearForm::parse("a*t").is_err());
    }

    #[test]
    fn evaluation() {
        let l = LinearForm::new(rat(5, 6), int(1));
        assert_eq!(l.at_rational(&int(1)).unwrap(), rat(11, 6));
        assert_eq!(l.shifted(&int(2)).rational_constant().unwrap(), rat(17, 6));
    }
}

//! Linear recurrences in `t` with polynomial coefficients.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::gcd::gcd;
use crate::arith::{Polynomial, Rational, RationalFunction, Var};

/// `B(t, n) = rho(t, n) * A(t, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub rho: RationalFunction,
}

/// `sum_i p_i(t) f(t + i) = inhomogeneity(t)`, coefficients in ascending shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub coefficients: Vec<Polynomial>,
    pub inhomogeneity: Option<RationalFunction>,
    pub certificate: Option<Certificate>,
}

impl Recurrence {
    pub fn homogeneous(coefficients: Vec<Polynomial>) -> Self {
        Recurrence { coefficients, inhomogeneity: None, certificate: None }.normalized()
    }

    pub fn order(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// `f(t+1)/f(t)` for a first-order recurrence.
    pub fn ratio(&self) -> Option<RationalFunction> {
        if self.order() != 1 || self.inhomogeneity.as_ref().map_or(false, |h| !h.is_zero()) {
            return None;
        }
        RationalFunction::new(-&self.coefficients[0], self.coefficients[1].clone()).ok()
    }

    /// Removes the common polynomial factor and fixes the sign and scale:
    /// integer coefficients, positive leading coefficient on the top shift.
    pub fn normalized(mut self) -> Self {
        while self.coefficients.len() > 1 && self.coefficients.last().unwrap().is_zero() {
            self.coefficients.pop();
        }
        let mut lead = 0i64;
        while self.coefficients.len() > 1 && self.coefficients[0].is_zero() {
            self.coefficients.remove(0);
            lead += 1;
        }
        if lead > 0 {
            // re-index so the lowest surviving shift is f(t)
            let h = Rational::from_integer((-lead).into());
            self.coefficients = self.coefficients.iter().map(|p| p.shift(Var::T, &h)).collect();
            self.inhomogeneity = self.inhomogeneity.map(|r| r.shift(Var::T, &h));
            self.certificate = self.certificate.map(|c| Certificate { rho: c.rho.shift(Var::T, &h) });
        }
        let mut g = Polynomial::zero();
        for c in &self.coefficients {
            g = gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            return self;
        }
        if !g.is_one() {
            for c in self.coefficients.iter_mut() {
                *c = c.div_exact(&g).expect("gcd divides");
            }
            let gf = RationalFunction::from_poly(g.clone());
            self.inhomogeneity = self.inhomogeneity.map(|h| &h / &gf);
            self.certificate = self.certificate.map(|c| Certificate { rho: &c.rho / &gf });
        }
        let mut content = content_of(&self.coefficients);
        if self.coefficients.last().unwrap().leading_coefficient().is_negative() {
            content = -content;
        }
        let inv = content.recip();
        for c in self.coefficients.iter_mut() {
            *c = c.scale(&inv);
        }
        self.inhomogeneity = self.inhomogeneity.map(|h| h.scale(&inv));
        self.certificate = self.certificate.map(|c| Certificate { rho: c.rho.scale(&inv) });
        self
    }

    /// Coefficients of the same operator written in `t -> t + s`.
    pub fn shifted(&self, s: i64) -> Vec<Polynomial> {
        let h = Rational::from_integer(s.into());
        self.coefficients.iter().map(|p| p.shift(Var::T, &h)).collect()
    }

    /// Same operator up to a common nonzero factor.
    pub fn equivalent(&self, other: &Recurrence) -> bool {
        if self.coefficients.len() != other.coefficients.len() {
            return false;
        }
        let a = Recurrence::homogeneous(self.coefficients.clone());
        let b = Recurrence::homogeneous(other.coefficients.clone());
        a.coefficients == b.coefficients
    }

    /// Residual of the recurrence on a numeric sequence `f(t + i)`.
    pub fn apply_rational(&self, t: &Rational, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (p, v) in self.coefficients.iter().zip(values) {
            acc += p.eval_var(Var::T, t).constant_value().expect("coefficients in t only") * v;
        }
        acc
    }
}

fn content_of(ps: &[Polynomial]) -> Rational {
    let (g, l) = crate::arith::rational::content_parts(ps.iter().flat_map(|p| p.terms().map(|(_, c)| c)));
    if g.is_zero() {
        return Rational::one();
    }
    Rational::new(g, l)
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, p) in self.coefficients.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let arg = if i == 0 { "t".to_string() } else { format!("t+{i}") };
            write!(f, "({p})*F({arg})")?;
        }
        if first {
            write!(f, "0")?;
        }
        match &self.inhomogeneity {
            Some(h) if !h.is_zero() => write!(f, " = {h}"),
            _ => write!(f, " = 0"),
        }
    }
}

//! Normalized quotients of polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{Polynomial, Var};
use super::rational::Rational;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic under grlex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        normalize(num, den)
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(Polynomial::constant(c))
    }

    pub fn var(v: Var) -> Self {
        RationalFunction::from_poly(Polynomial::var(v))
    }

    pub fn zero() -> Self {
        RationalFunction::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Polynomial::one())
    }

    /// Builds a quotient whose parts are already known to be coprime.
    /// Only the denominator scaling is normalized.
    pub fn from_coprime(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let c = den.leading_coefficient().recip();
        Ok(RationalFunction { num: num.scale(&c), den: den.scale(&c) })
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn into_parts(self) -> (Polynomial, Polynomial) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.iter().copied().filter(|&v| self.contains(v)).collect()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RationalFunction::from_coprime(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn checked_div(&self, o: &RationalFunction) -> Result<Self> {
        Ok(self * &o.recip()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RationalFunction { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// Simultaneous substitution of rational functions for variables.
    pub fn substitute(&self, bindings: &[(Var, RationalFunction)]) -> Result<Self> {
        let (n1, d1) = substitute_poly(&self.num, bindings);
        let (n2, d2) = substitute_poly(&self.den, bindings);
        let num = &n1 * &d2;
        let den = &d1 * &n2;
        normalize(num, den)
    }

    /// Substitutes a rational value for `v`.
    pub fn eval_var(&self, v: Var, x: &Rational) -> Result<Self> {
        let den = self.den.eval_var(v, x);
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        normalize(self.num.eval_var(v, x), den)
    }

    /// `v -> v + h`
    pub fn shift(&self, v: Var, h: &Rational) -> Self {
        RationalFunction {
            num: self.num.shift(v, h),
            den: self.den.shift(v, h),
        }
    }

    /// Value at a full rational point.
    pub fn eval_point(&self, point: &[Rational; super::poly::NVARS]) -> Result<Rational> {
        let d = self.den.eval_point(point);
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.num.eval_point(point) / d)
    }

    pub fn derivative(&self, v: Var) -> Self {
        let num = &(&self.num.derivative(v) * &self.den) - &(&self.num * &self.den.derivative(v));
        let den = &self.den * &self.den;
        normalize(num, den).expect("nonzero denominator")
    }
}

/// Reduces `num/den` to lowest terms with a monic denominator.
pub fn normalize(num: Polynomial, den: Polynomial) -> Result<RationalFunction> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(RationalFunction::zero());
    }
    let g = gcd(&num, &den);
    let (num, den) = if g.is_one() {
        (num, den)
    } else {
        (
            num.div_exact(&g).expect("gcd divides numerator"),
            den.div_exact(&g).expect("gcd divides denominator"),
        )
    };
    RationalFunction::from_coprime(num, den)
}

/// Substitutes into a polynomial and returns an unreduced quotient.
pub fn substitute_poly(p: &Polynomial, bindings: &[(Var, RationalFunction)]) -> (Polynomial, Polynomial) {
    let active: Vec<&(Var, RationalFunction)> =
        bindings.iter().filter(|(v, _)| p.contains(*v)).collect();
    if active.is_empty() {
        return (p.clone(), Polynomial::one());
    }
    if active.iter().all(|(_, f)| f.is_polynomial()) {
        let polys: Vec<(Var, Polynomial)> = active.iter().map(|(v, f)| (*v, f.num.clone())).collect();
        return (p.substitute(&polys), Polynomial::one());
    }
    let degs: Vec<usize> = active.iter().map(|(v, _)| p.degree_in(*v)).collect();
    let mut num_pows: Vec<Vec<Polynomial>> = active.iter().map(|_| vec![Polynomial::one()]).collect();
    let mut den_pows: Vec<Vec<Polynomial>> = active.iter().map(|_| vec![Polynomial::one()]).collect();
    for (i, (_, f)) in active.iter().enumerate() {
        for _ in 0..degs[i] {
            let n = &num_pows[i][num_pows[i].len() - 1] * &f.num;
            num_pows[i].push(n);
            let d = &den_pows[i][den_pows[i].len() - 1] * &f.den;
            den_pows[i].push(d);
        }
    }
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        let mut rest = *m;
        let mut factor = Polynomial::one();
        for (i, (v, _)) in active.iter().enumerate() {
            let e = m.exp(*v) as usize;
            rest.0[v.index()] = 0;
            factor = &factor * &(&num_pows[i][e] * &den_pows[i][degs[i] - e]);
        }
        out = out + factor.mul_monomial(&rest, c);
    }
    let mut den = Polynomial::one();
    for (i, _) in active.iter().enumerate() {
        den = &den * &den_pows[i][degs[i]];
    }
    (out, den)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let wrap = |p: &Polynomial| {
                if p.num_terms() > 1 || p.leading_coefficient() != Rational::one() && !p.is_constant() {
                    format!("({p})")
                } else {
                    p.to_string()
                }
            };
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.den == o.den {
            return normalize(&self.num + &o.num, self.den.clone()).expect("nonzero denominator");
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        normalize(num, &self.den * &o.den).expect("nonzero denominator")
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() || o.is_zero() {
            return RationalFunction::zero();
        }
        // cross-cancel before multiplying to keep gcds small
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RationalFunction::from_coprime(&n1 * &n2, &d1 * &d2).expect("nonzero denominator")
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn div(self, o: &RationalFunction) -> RationalFunction {
        self.checked_div(o).expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, o: RationalFunction) -> RationalFunction {
                (&self).$method(&o)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, o: &RationalFunction) -> RationalFunction {
                (&self).$method(o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        RationalFunction::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn t() -> Polynomial {
        Polynomial::var(Var::T)
    }

    fn c(x: Rational) -> Polynomial {
        Polynomial::constant(x)
    }

    #[test]
    fn cancels_common_factor() {
        let f = normalize(&t().pow(2) - &c(int(1)), &t() - &c(int(1))).unwrap();
        assert_eq!(f, RationalFunction::from_poly(&t() + &c(int(1))));
    }

    #[test]
    fn zero_numerator() {
        let f = normalize(Polynomial::zero(), t().scale(&int(7))).unwrap();
        assert!(f.is_zero());
        assert!(f.denom().is_one());
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(normalize(t(), Polynomial::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn monic_denominator() {
        let f = normalize(&t().scale(&int(16)) + &c(rat(40, 3)), &t().scale(&int(27)) + &c(int(18))).unwrap();
        let expect_num = (&t() + &c(rat(5, 6))).scale(&rat(16, 27));
        assert_eq!(f.numer(), &expect_num);
        assert_eq!(f.denom(), &(&t() + &c(rat(2, 3))));
    }

    #[test]
    fn substitution() {
        let z = Polynomial::var(Var::Z);
        let a = Polynomial::var(Var::A);
        let f = normalize(z, a).unwrap();
        let g = f
            .substitute(&[
                (Var::A, RationalFunction::from_poly(t().scale(&int(2)))),
                (Var::Z, RationalFunction::constant(rat(-1, 8))),
            ])
            .unwrap();
        assert_eq!(g, normalize(c(int(-1)), t().scale(&int(16))).unwrap());

        let h = normalize(&t() + &c(int(1)), &t() + &c(int(2))).unwrap();
        let h1 = h.substitute(&[(Var::T, RationalFunction::from_poly(&t() + &c(int(1))))]).unwrap();
        assert_eq!(h1, normalize(&t() + &c(int(2)), &t() + &c(int(3))).unwrap());
    }

    #[test]
    fn rational_substitution_is_simultaneous() {
        // a/b with a -> b/(a+1), b -> a
        let a = Polynomial::var(Var::A);
        let b = Polynomial::var(Var::B);
        let f = normalize(a.clone(), b.clone()).unwrap();
        let g = f
            .substitute(&[
                (Var::A, normalize(b.clone(), &a + &c(int(1))).unwrap()),
                (Var::B, RationalFunction::from_poly(a.clone())),
            ])
            .unwrap();
        let expect = normalize(b, &(&a * &a) + &a).unwrap();
        assert_eq!(g, expect);
    }
}

//! Binary floating point with an explicit working precision, backed by
//! `astro-float`. Results of binary operations take the larger precision of
//! the two operands.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat as Af, Consts, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rational;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone, Debug)]
pub struct BigFloat {
    v: Af,
    prec: usize,
}

impl BigFloat {
    fn wrap(v: Af, prec: usize) -> Self {
        debug_assert!(!v.is_nan(), "NaN in BigFloat: {:?}", v.err());
        BigFloat { v, prec }
    }

    pub fn zero(prec: usize) -> Self {
        Self::wrap(Af::from_word(0, prec), prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::wrap(Af::from_word(1, prec), prec)
    }

    pub fn from_i64(x: i64, prec: usize) -> Self {
        Self::wrap(Af::from_i64(x, prec), prec)
    }

    /// Exact when `prec` covers the bit length of `n`.
    pub fn from_bigint(n: &BigInt, prec: usize) -> Self {
        if n.is_zero() {
            return Self::zero(prec);
        }
        let (sign, words) = n.to_u64_digits();
        let s = if sign == BigSign::Minus { Sign::Neg } else { Sign::Pos };
        let words: Vec<Word> = words.into_iter().map(|w| w as Word).collect();
        let e = (words.len() * 64) as i32;
        let exact = Af::from_words(&words, s, e);
        let mut v = exact;
        if v.precision().map_or(true, |p| p > prec) {
            v.set_precision(prec, RM).expect("valid precision");
        }
        Self::wrap(v, prec)
    }

    pub fn from_rational(r: &Rational, prec: usize) -> Self {
        let n = Self::from_bigint(r.numer(), prec + 64);
        if r.denom().is_one() {
            return n.round_to(prec);
        }
        let d = Self::from_bigint(r.denom(), prec + 64);
        Self::wrap(n.v.div(&d.v, prec, RM), prec)
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn round_to(&self, prec: usize) -> Self {
        let mut v = self.v.clone();
        v.set_precision(prec, RM).expect("valid precision");
        Self::wrap(v, prec)
    }

    pub fn pi(prec: usize) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(prec, RM)), prec)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.v.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.prec)
    }

    pub fn recip(&self) -> Self {
        Self::wrap(self.v.reciprocal(self.prec, RM), self.prec)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.v.sqrt(self.prec, RM), self.prec)
    }

    pub fn exp(&self) -> Self {
        Self::wrap(with_consts(|cc| self.v.exp(self.prec, RM, cc)), self.prec)
    }

    /// Natural logarithm of a positive number.
    pub fn ln(&self) -> Self {
        assert!(self.v.is_positive() && !self.is_zero(), "logarithm of a non-positive number");
        Self::wrap(with_consts(|cc| self.v.ln(self.prec, RM, cc)), self.prec)
    }

    pub fn powi(&self, e: i64) -> Self {
        let p = self.v.powi(e.unsigned_abs() as usize, self.prec, RM);
        let p = Self::wrap(p, self.prec);
        if e < 0 {
            p.recip()
        } else {
            p
        }
    }

    /// `self^e` for a positive base.
    pub fn pow(&self, e: &BigFloat) -> Self {
        (&self.ln() * e).exp()
    }

    /// Exact dyadic value.
    pub fn to_rational(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let (words, _, sign, e, _) = self.v.as_raw_parts().expect("finite value");
        let m = BigUint::from_slice(
            &words.iter().flat_map(|w| [(*w as u64) as u32, ((*w as u64) >> 32) as u32]).collect::<Vec<_>>(),
        );
        let mut num = BigInt::from(m);
        if sign == Sign::Neg {
            num = -num;
        }
        let shift = e as i64 - (words.len() * 64) as i64;
        if shift >= 0 {
            Rational::from_integer(num << shift as usize)
        } else {
            Rational::new(num, BigInt::one() << (-shift) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (words, _, sign, e, _) = self.v.as_raw_parts().expect("finite value");
        let top = *words.last().unwrap() as u64 as f64 / 2f64.powi(64);
        let x = top * 2f64.powi(e);
        if sign == Sign::Neg {
            -x
        } else {
            x
        }
    }

    /// Base-2 exponent `e` with `2^(e-1) <= |self| < 2^e`; `None` for zero.
    pub fn exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            self.v.exponent().map(|e| e as i64)
        }
    }

    /// `log10 |self|`, approximate.
    pub fn log10_abs(&self) -> f64 {
        match self.exponent() {
            None => f64::NEG_INFINITY,
            Some(e) => {
                let (words, _, _, _, _) = self.v.as_raw_parts().expect("finite value");
                let top = *words.last().unwrap() as u64 as f64 / 2f64.powi(64);
                top.log10() + e as f64 * std::f64::consts::LOG10_2
            }
        }
    }

    /// `|a - b| / max(|a|, |b|)`, zero when both vanish.
    pub fn rel_diff(&self, other: &BigFloat) -> BigFloat {
        let prec = self.prec.max(other.prec);
        let m = if self.abs() >= other.abs() { self.abs() } else { other.abs() };
        if m.is_zero() {
            return Self::zero(prec);
        }
        &(self - other).abs() / &m
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_scientific(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let r = self.to_rational();
        let neg = r.is_negative();
        let r = r.abs();
        let mut k = self.log10_abs().floor() as i64;
        let scaled = |k: i64| -> BigInt {
            let s = digits as i64 - 1 - k;
            let ten = BigInt::from(10);
            let v = if s >= 0 {
                &r * Rational::from_integer(ten.pow(s as u32))
            } else {
                &r / Rational::from_integer(ten.pow((-s) as u32))
            };
            (v + Rational::new(1.into(), 2.into())).floor().to_integer()
        };
        let mut m = scaled(k);
        let upper = BigInt::from(10).pow(digits as u32);
        if m >= upper {
            k += 1;
            m = scaled(k);
        } else if m < upper.clone() / 10 {
            k -= 1;
            m = scaled(k);
        }
        let s = m.to_string();
        let (head, tail) = s.split_at(1);
        let sign = if neg { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{k}")
        } else {
            format!("{sign}{head}.{tail}e{k}")
        }
    }

    pub fn to_i64_checked(&self) -> Option<i64> {
        let r = self.to_rational();
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }
}

/// Decimal digits represented by `bits` of precision.
pub fn decimal_digits(bits: usize) -> usize {
    (bits as f64 * std::f64::consts::LOG10_2).floor() as usize
}

/// `10^(-k)` at the given precision.
pub fn ten_to_minus(k: usize, prec: usize) -> BigFloat {
    BigFloat::from_i64(10, prec).powi(-(k as i64))
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or_else(|| decimal_digits(self.prec).max(1));
        write!(f, "{}", self.to_scientific(digits))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $af:ident) => {
        impl $tr<&BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $m(self, o: &BigFloat) -> BigFloat {
                let p = self.prec.max(o.prec);
                BigFloat::wrap(self.v.$af(&o.v, p, RM), p)
            }
        }
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, o: BigFloat) -> BigFloat {
                (&self).$m(&o)
            }
        }
        impl $tr<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, o: &BigFloat) -> BigFloat {
                (&self).$m(o)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat::wrap(astro_float::BigFloat::neg(&self.v), self.prec)
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn rational_round_trip_is_exact_for_dyadics() {
        for r in [rat(3, 8), rat(-5, 1024), rat(123456789, 1), rat(0, 1)] {
            assert_eq!(BigFloat::from_rational(&r, 128).to_rational(), r);
        }
    }

    #[test]
    fn elementary_values() {
        let p = 256;
        let two = BigFloat::from_i64(2, p);
        let s = two.sqrt();
        assert!((&(&s * &s) - &two).abs().log10_abs() < -70.0);
        let e = BigFloat::one(p).exp();
        assert!(e.to_scientific(20).starts_with("2.718281828459045235"));
        let pi = BigFloat::pi(p).to_scientific(34);
        assert!(pi.starts_with("3.14159265358979323846264338327"), "{pi}");
        assert!((&e.ln() - &BigFloat::one(p)).abs().log10_abs() < -70.0);
    }

    #[test]
    fn scientific_formatting() {
        assert_eq!(BigFloat::from_rational(&rat(1, 8), 64).to_scientific(3), "1.25e-1");
        assert_eq!(BigFloat::from_i64(-1000, 64).to_scientific(2), "-1.0e3");
        assert_eq!(BigFloat::from_rational(&rat(2, 3), 128).to_scientific(5), "6.6667e-1");
    }
}

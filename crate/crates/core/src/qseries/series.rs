//! Power series in `q` truncated at `O(q^N)` with Laurent coefficients.

use std::fmt;

use num_traits::{One, Zero};

use super::laurent::{Laurent, Mono};
use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Laurent>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![Laurent::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        QSeries::monomial(&Mono::one(), 0, order)
    }

    /// `m · q^e`, which is zero when `e >= order`.
    pub fn monomial(m: &Mono, e: usize, order: usize) -> Self {
        let mut s = QSeries::zero(order);
        if e < order {
            s.coeffs[e] = Laurent::from_mono(m);
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Laurent>) -> Self {
        QSeries { coeffs }
    }

    /// Number of known coefficients `N` in `... + O(q^N)`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> &Laurent {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Laurent] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Laurent::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, m: usize) -> QSeries {
        assert!(m <= self.order(), "cannot extend a truncated series");
        QSeries { coeffs: self.coeffs[..m].to_vec() }
    }

    fn check_order(&self, o: &QSeries) {
        assert_eq!(self.order(), o.order(), "mismatched truncation orders");
    }

    pub fn add(&self, o: &QSeries) -> QSeries {
        self.check_order(o);
        QSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x.add(y)).collect() }
    }

    pub fn sub(&self, o: &QSeries) -> QSeries {
        self.check_order(o);
        QSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x.sub(y)).collect() }
    }

    pub fn mul(&self, o: &QSeries) -> QSeries {
        self.check_order(o);
        let n = self.order();
        let mut out = QSeries::zero(n);
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs[..n - i].iter().enumerate() {
                if !y.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].add(&x.mul(y));
                }
            }
        }
        out
    }

    pub fn scale(&self, m: &Mono) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| c.scaled(m)).collect() }
    }

    /// Multiplies by `1 - m q^s`.
    pub fn mul_binomial(&mut self, m: &Mono, s: usize) {
        if s >= self.order() {
            return;
        }
        let neg = Mono { coef: -&m.coef, exps: m.exps };
        if s == 0 {
            for c in self.coeffs.iter_mut() {
                let old = c.clone();
                c.add_scaled(&old, &neg);
            }
            return;
        }
        for n in (s..self.order()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            hi[0].add_scaled(&lo[n - s], &neg);
        }
    }

    /// Divides by `1 - m q^s`, expanding the geometric series. With `s = 0`
    /// only constant `m != 1` is invertible.
    pub fn div_binomial(&mut self, m: &Mono, s: usize) -> Result<()> {
        if s == 0 {
            let d = Rational::one() - &m.coef;
            if !m.is_constant() || d.is_zero() {
                return Err(Error::NonInvertible(format!("1 - ({}) has no power series inverse", Laurent::from_mono(m))));
            }
            let inv = Mono::constant(Rational::one() / d);
            *self = self.scale(&inv);
            return Ok(());
        }
        for n in s..self.order() {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            hi[0].add_scaled(&lo[n - s], m);
        }
        Ok(())
    }

    /// First index where the series differ, with `self - other` there.
    pub fn first_difference(&self, o: &QSeries) -> Option<(usize, Laurent)> {
        self.check_order(o);
        self.coeffs.iter().zip(&o.coeffs).enumerate().find_map(|(i, (x, y))| {
            let d = x.sub(y);
            (!d.is_zero()).then_some((i, d))
        })
    }

    pub fn specialize(&self, i: usize, v: &Rational) -> Option<QSeries> {
        let coeffs: Option<Vec<Laurent>> = self.coeffs.iter().map(|c| c.specialize(i, v)).collect();
        coeffs.map(|coeffs| QSeries { coeffs })
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = c.to_string();
            let simple = c.num_terms() == 1;
            let (sign, body) = match body.strip_prefix('-') {
                Some(rest) if simple => ("-", rest.to_string()),
                _ => ("+", body),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let body = if simple { body } else { format!("({body})") };
            match n {
                0 => write!(f, "{body}")?,
                _ => {
                    let qp = if n == 1 { "q".to_string() } else { format!("q^{n}") };
                    if body == "1" {
                        write!(f, "{qp}")?;
                    } else {
                        write!(f, "{body}*{qp}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order())
    }
}

impl QSeries {
    pub fn is_one(&self) -> bool {
        self.order() == 0
            || (self.coeffs[0] == Laurent::constant(Rational::one()) && self.coeffs[1..].iter().all(Laurent::is_zero))
    }
}

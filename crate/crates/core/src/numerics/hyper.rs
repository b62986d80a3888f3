//! Generalized hypergeometric series `pFq(a; b | z)` at rational arguments.

use num_traits::{One, Signed, Zero};

use super::bigfloat::BigFloat;
use crate::arith::rational::{fmt_rational, is_nonpositive_integer, to_i64};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Terminating series are summed exactly.
#[derive(Clone, Debug)]
pub enum HyperValue {
    Exact(Rational),
    Approx(BigFloat),
}

impl HyperValue {
    pub fn to_bigfloat(&self, prec: usize) -> BigFloat {
        match self {
            HyperValue::Exact(r) => BigFloat::from_rational(r, prec),
            HyperValue::Approx(x) => x.round_to(prec),
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            HyperValue::Exact(r) => Some(r),
            HyperValue::Approx(_) => None,
        }
    }
}

/// Index of the last nonzero term when some upper parameter is a
/// non-positive integer.
pub fn termination_index(upper: &[Rational]) -> Option<u64> {
    upper.iter().filter(|a| is_nonpositive_integer(a)).map(|a| to_i64(&-a.clone()).expect("small integer") as u64).min()
}

/// Multiplier taking term `n` to term `n + 1`.
fn term_ratio(upper: &[Rational], lower: &[Rational], z: &Rational, n: u64) -> Rational {
    let nr = Rational::from_integer(n.into());
    let mut r = z.clone();
    for a in upper {
        r *= a + &nr;
    }
    for b in lower {
        r /= b + &nr;
    }
    r / (nr + Rational::one())
}

/// Exact partial sum of terms `0..=n`.
pub fn partial_sum(upper: &[Rational], lower: &[Rational], z: &Rational, n: u64) -> Rational {
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for k in 0..n {
        term *= term_ratio(upper, lower, z, k);
        sum += &term;
    }
    sum
}

fn check_lower(lower: &[Rational], last: Option<u64>) -> Result<()> {
    for b in lower {
        if is_nonpositive_integer(b) {
            let m = to_i64(&-b.clone()).expect("small integer") as u64;
            // (b)_n vanishes from n = m + 1 on
            if last.map_or(true, |n| n > m) {
                return Err(Error::LowerParamPole(fmt_rational(b)));
            }
        }
    }
    Ok(())
}

/// Bound on `sup_{m >= n} |term_ratio(m)|`, valid once `n` exceeds every
/// `|b_j| + 1`. Upper parameters are paired with the lower ones and with the
/// factorial, surplus denominators are bounded by 1.
fn ratio_bound(upper: &[Rational], lower: &[Rational], z: &Rational, n: u64) -> Rational {
    let nr = Rational::from_integer(n.into());
    let mut rho = z.abs();
    for (i, a) in upper.iter().enumerate() {
        let num = &nr + a.abs();
        let f = if i < lower.len() {
            num / (&nr - lower[i].abs())
        } else {
            let f = num / (&nr + Rational::one());
            if f < Rational::one() {
                Rational::one()
            } else {
                f
            }
        };
        rho *= f;
    }
    rho
}

pub fn hyper_value(upper: &[Rational], lower: &[Rational], z: &Rational, prec: usize) -> Result<HyperValue> {
    let last = termination_index(upper);
    check_lower(lower, if z.is_zero() { Some(0) } else { last })?;
    if z.is_zero() {
        return Ok(HyperValue::Exact(Rational::one()));
    }
    if let Some(n) = last {
        return Ok(HyperValue::Exact(partial_sum(upper, lower, z, n)));
    }
    if z.abs() >= Rational::one() || upper.len() > lower.len() + 1 {
        return Err(Error::Divergent);
    }

    let w = prec + 64;
    let n0 = lower.iter().map(|b| b.abs().ceil().to_integer()).max().unwrap_or_default();
    let n0: u64 = (n0 + 2u32).try_into().unwrap_or(u64::MAX);
    let target = BigFloat::from_i64(2, w).powi(-(prec as i64 + 4));
    let mut term = BigFloat::one(w);
    let mut sum = BigFloat::one(w);
    let mut n: u64 = 0;
    loop {
        let r = term_ratio(upper, lower, z, n);
        term = &term * &BigFloat::from_rational(&r, w);
        n += 1;
        sum = &sum + &term;
        // term now holds index n; the remaining tail starts at n + 1
        if n >= n0 {
            let rho = ratio_bound(upper, lower, z, n);
            if rho < Rational::one() {
                let next = &term.abs() * &BigFloat::from_rational(&term_ratio(upper, lower, z, n).abs(), w);
                let bound = &next / &BigFloat::from_rational(&(Rational::one() - rho), w);
                if bound <= &target * &sum.abs() {
                    break;
                }
            }
        }
        if n > 5_000_000 {
            return Err(Error::Eval("hypergeometric summation did not converge".into()));
        }
    }
    Ok(HyperValue::Approx(sum.round_to(prec)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn zero_argument_is_one() {
        let v = hyper_value(&[rat(1, 3), rat(5, 2)], &[rat(7, 4)], &int(0), 64).unwrap();
        assert_eq!(v.exact(), Some(&int(1)));
    }

    #[test]
    fn terminating_matches_brute_force() {
        // t = 2 in 2F1(-t, 1/2 - t; 3/2 + 4t | 1/5)
        let up = [int(-2), rat(-3, 2)];
        let lo = [rat(19, 2)];
        let z = rat(1, 5);
        let v = hyper_value(&up, &lo, &z, 64).unwrap();
        // 1 + (-2)(-3/2)/(19/2) z + (-2)(-1)(-3/2)(-1/2)/((19/2)(21/2) 2) z^2
        let t1 = rat(3, 1) / rat(19, 2) * &z;
        let t2 = rat(3, 2) / (rat(19, 2) * rat(21, 2) * int(2)) * &z * &z;
        assert_eq!(v.exact().unwrap(), &(int(1) + t1 + t2));
    }

    #[test]
    fn divergent_and_pole() {
        assert!(matches!(hyper_value(&[rat(1, 3), int(1)], &[rat(2, 3)], &int(2), 64), Err(Error::Divergent)));
        assert!(matches!(hyper_value(&[rat(1, 3)], &[int(-2)], &rat(1, 2), 64), Err(Error::LowerParamPole(_))));
        // terminates before the lower pole
        assert!(hyper_value(&[int(-1)], &[int(-2)], &rat(1, 2), 64).is_ok());
    }

    #[test]
    fn geometric_series() {
        // 1F0(1; | z) = 1/(1-z)
        let v = hyper_value(&[int(1)], &[], &rat(4, 5), 200).unwrap().to_bigfloat(200);
        assert!(v.rel_diff(&BigFloat::from_i64(5, 200)).log10_abs() < -57.0);
    }
}

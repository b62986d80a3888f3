//! Gamma function at rational arguments.
//!
//! The argument is moved into `[1, 2)` with the exact recurrence
//! `Γ(x+1) = xΓ(x)`, then Spouge's approximation is applied at a working
//! precision large enough to absorb cancellation in its coefficients.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::{One, Zero};

use super::bigfloat::BigFloat;
use crate::arith::rational::{fmt_rational, is_nonpositive_integer};
use crate::arith::Rational;
use crate::error::{Error, Result};

thread_local! {
    static SPOUGE: RefCell<HashMap<usize, (usize, Vec<BigFloat>)>> = RefCell::new(HashMap::new());
}

/// Spouge parameter giving relative error below `2^-bits`:
/// the bound is `a^(-1/2) (2π)^-(a+1/2)` and `log2(2π) ≈ 2.65`.
fn spouge_a(bits: usize) -> usize {
    (bits as f64 / 2.65).ceil() as usize + 2
}

fn working_precision(prec: usize) -> usize {
    2 * prec + 64
}

/// `(a, [c_0, ..., c_{a-1}])` at working precision `w`.
fn spouge_coefficients(prec: usize) -> (usize, Vec<BigFloat>) {
    if let Some(hit) = SPOUGE.with(|m| m.borrow().get(&prec).cloned()) {
        return hit;
    }
    let w = working_precision(prec);
    let a = spouge_a(prec + 16);
    let af = BigFloat::from_i64(a as i64, w);
    let mut cs = Vec::with_capacity(a);
    cs.push((&BigFloat::pi(w) * &BigFloat::from_i64(2, w)).sqrt());
    // running (k-1)!
    let mut fact = BigFloat::one(w);
    let half = BigFloat::from_rational(&Rational::new(1.into(), 2.into()), w);
    for k in 1..a {
        if k > 1 {
            fact = &fact * &BigFloat::from_i64(k as i64 - 1, w);
        }
        let base = &af - &BigFloat::from_i64(k as i64, w);
        let expo = &BigFloat::from_i64(k as i64, w) - &half;
        let mut c = &(&base.pow(&expo) * &base.exp()) / &fact;
        if k % 2 == 0 {
            c = -c;
        }
        cs.push(c);
    }
    let out = (a, cs);
    SPOUGE.with(|m| m.borrow_mut().insert(prec, out.clone()));
    out
}

/// Γ(1 + z) for `z` in `[0, 1)`.
fn spouge(z: &Rational, prec: usize) -> BigFloat {
    let w = working_precision(prec);
    let (a, cs) = spouge_coefficients(prec);
    let zf = BigFloat::from_rational(z, w);
    let mut sum = cs[0].clone();
    for (k, c) in cs.iter().enumerate().skip(1) {
        sum = &sum + &(c / &(&zf + &BigFloat::from_i64(k as i64, w)));
    }
    let za = &zf + &BigFloat::from_i64(a as i64, w);
    let half = BigFloat::from_rational(&Rational::new(1.into(), 2.into()), w);
    let lead = &za.pow(&(&zf + &half)) * &(-&za).exp();
    &lead * &sum
}

pub fn gamma(x: &Rational, prec: usize) -> Result<BigFloat> {
    if is_nonpositive_integer(x) {
        return Err(Error::PoleAtNonPositiveInteger(fmt_rational(x)));
    }
    if x.is_integer() && x.to_integer() <= 64.into() {
        let n: u32 = x.to_integer().try_into().expect("small integer");
        let mut f = num_bigint::BigInt::one();
        for i in 2..n {
            f *= i;
        }
        return Ok(BigFloat::from_bigint(&f, prec));
    }
    // x = y + n with y in [1, 2)
    let n: num_bigint::BigInt = x.floor().to_integer() - 1;
    let y = x - Rational::from_integer(n.clone());
    let mut factor = Rational::one();
    let mut cur = y.clone();
    if n > Zero::zero() {
        let mut i = num_bigint::BigInt::zero();
        while i < n {
            factor *= &cur;
            cur += Rational::one();
            i += 1;
        }
    } else {
        let mut i = num_bigint::BigInt::zero();
        while i > n {
            cur -= Rational::one();
            factor /= &cur;
            i -= 1;
        }
    }
    let core = spouge(&(y - Rational::one()), prec);
    let w = working_precision(prec);
    Ok((&core * &BigFloat::from_rational(&factor, w)).round_to(prec))
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: &Rational, prec: usize) -> Result<BigFloat> {
    Ok(gamma(x, prec + 32)?.abs().ln().round_to(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn close(a: &BigFloat, b: &BigFloat, digits: f64) -> bool {
        a.rel_diff(b).log10_abs() < -digits
    }

    #[test]
    fn factorials_and_half() {
        let p = 200;
        assert_eq!(gamma(&int(1), p).unwrap().to_rational(), int(1));
        assert_eq!(gamma(&int(5), p).unwrap().to_rational(), int(24));
        let sqrt_pi = BigFloat::pi(p).sqrt();
        assert!(close(&gamma(&rat(1, 2), p).unwrap(), &sqrt_pi, 55.0));
        assert!(gamma(&rat(1, 2), p).unwrap().to_scientific(20).starts_with("1.7724538509055160273"));
    }

    #[test]
    fn reflection_oracle() {
        let p = 200;
        let lhs = &gamma(&rat(1, 3), p).unwrap() * &gamma(&rat(2, 3), p).unwrap();
        let rhs = &(&BigFloat::pi(p) * &BigFloat::from_i64(2, p)) / &BigFloat::from_i64(3, p).sqrt();
        assert!(close(&lhs, &rhs, 55.0));
    }

    #[test]
    fn negative_arguments_and_poles() {
        let p = 128;
        // Γ(-1/2) = -2√π
        let v = gamma(&rat(-1, 2), p).unwrap();
        let want = -(&BigFloat::pi(p).sqrt() * &BigFloat::from_i64(2, p));
        assert!(close(&v, &want, 33.0));
        assert!(matches!(gamma(&int(0), p), Err(Error::PoleAtNonPositiveInteger(_))));
        assert!(matches!(gamma(&int(-3), p), Err(Error::PoleAtNonPositiveInteger(_))));
    }
}

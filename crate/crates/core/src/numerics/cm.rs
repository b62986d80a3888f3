//! Legendre symbols and the gamma products attached to them.

use num_bigint::BigInt;

use super::bigfloat::BigFloat;
use super::gamma::gamma;
use crate::arith::roots::factor_u64;
use crate::arith::Rational;
use crate::error::{Error, Result};

fn check_odd_prime(n: i64) -> Result<u64> {
    if n < 3 || n % 2 == 0 || factor_u64(n as u64) != vec![(n as u64, 1)] {
        return Err(Error::NotPrime(n));
    }
    Ok(n as u64)
}

/// `(j / n)` by Euler's criterion.
pub fn legendre(j: i64, n: i64) -> Result<i8> {
    let p = check_odd_prime(n)?;
    let a = j.rem_euclid(n) as u64;
    if a == 0 {
        return Ok(0);
    }
    let e = BigInt::from(a).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
    Ok(if e == BigInt::from(1) { 1 } else { -1 })
}

/// `∏_{j=1}^{n-1} Γ(j/n)^{(j/n)}`.
pub fn cm_product(n: i64, prec: usize) -> Result<BigFloat> {
    check_odd_prime(n)?;
    let w = prec + 32;
    let mut acc = BigFloat::one(w);
    for j in 1..n {
        let g = gamma(&Rational::new(j.into(), n.into()), w)?;
        match legendre(j, n)? {
            1 => acc = &acc * &g,
            -1 => acc = &acc / &g,
            _ => {}
        }
    }
    Ok(acc.round_to(prec))
}

//! Rational roots and linear factorization of univariate polynomials.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{Polynomial, Var};
use super::ratfunc::RationalFunction;
use super::rational::{fmt_rational, Rational};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Every rational root of `p` in `var`, with multiplicity, ascending.
pub fn rational_roots(p: &Polynomial, var: Var) -> Result<Vec<Rational>> {
    let u = UniPoly::from_poly(p, var)?;
    Ok(uni_rational_roots(&u).0)
}

/// Roots with multiplicity, plus the cofactor left after dividing them out.
pub fn uni_rational_roots(u: &UniPoly) -> (Vec<Rational>, UniPoly) {
    let mut roots = Vec::new();
    if u.is_zero() {
        return (roots, u.clone());
    }
    let mut rest = u.clone();
    while rest.degree() > 0 && rest.coeff(0).is_zero() {
        roots.push(Rational::zero());
        rest = UniPoly::new(rest.coeffs()[1..].to_vec());
    }
    if rest.degree() > 0 {
        let ints = integer_coefficients(&rest);
        let lead = ints.last().unwrap().abs().to_biguint().unwrap();
        let trail = ints[0].abs().to_biguint().unwrap();
        let ps = divisors(&trail);
        let qs = divisors(&lead);
        let mut candidates: Vec<Rational> = Vec::new();
        for p in &ps {
            for q in &qs {
                if p.gcd(q).is_one() {
                    let r = Rational::new(BigInt::from(p.clone()), BigInt::from(q.clone()));
                    candidates.push(-r.clone());
                    candidates.push(r);
                }
            }
        }
        candidates.sort();
        for r in candidates {
            if rest.degree() == 0 {
                break;
            }
            while rest.degree() > 0 && rest.eval(&r).is_zero() {
                rest = rest.div_rem(&UniPoly::root_factor(&r)).0;
                roots.push(r.clone());
            }
        }
    }
    roots.sort();
    (roots, rest)
}

fn integer_coefficients(u: &UniPoly) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in u.coeffs() {
        l = l.lcm(c.denom());
    }
    u.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect()
}

/// Positive divisors, ascending.
pub fn divisors(n: &BigUint) -> Vec<BigUint> {
    if n.is_zero() {
        return vec![BigUint::one()];
    }
    let mut divs = vec![BigUint::one()];
    for (p, e) in factor_integer(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Prime factorization by trial division followed by Pollard–Brent rho.
pub fn factor_integer(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut n = n.clone();
    let push = |p: BigUint, out: &mut Vec<(BigUint, u32)>| {
        if let Some(e) = out.iter_mut().find(|(q, _)| *q == p) {
            e.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    let mut p = 2u64;
    while p < 10_000 {
        let bp = BigUint::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            n /= &bp;
            push(bp.clone(), &mut out);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = Vec::new();
    if n > BigUint::one() {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if is_probable_prime(&m) {
            push(m, &mut out);
            continue;
        }
        let d = pollard_brent(&m);
        let other = &m / &d;
        stack.push(d);
        stack.push(other);
    }
    out.sort();
    out
}

fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let bp = BigUint::from(p);
        if *n == bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m = 64u64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1u32;
    }
}

/// `constant * prod (v + alpha) / prod (v + delta)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearFactorization {
    #[serde(with = "crate::serde_rational")]
    pub constant: Rational,
    #[serde(with = "crate::serde_rational::vec")]
    pub alphas: Vec<Rational>,
    #[serde(with = "crate::serde_rational::vec")]
    pub deltas: Vec<Rational>,
}

impl LinearFactorization {
    pub fn recompose(&self, var: Var) -> RationalFunction {
        let mut num = Polynomial::constant(self.constant.clone());
        for a in &self.alphas {
            num = &num * &Polynomial::linear(var, a.clone());
        }
        let mut den = Polynomial::one();
        for d in &self.deltas {
            den = &den * &Polynomial::linear(var, d.clone());
        }
        RationalFunction::new(num, den).expect("nonzero denominator")
    }

    pub fn to_text(&self, var: Var) -> String {
        let lin = |r: &Rational| {
            if r.is_zero() {
                var.to_string()
            } else if r.is_negative() {
                format!("({var}-{})", fmt_rational(&-r))
            } else {
                format!("({var}+{})", fmt_rational(r))
            }
        };
        let num: Vec<String> = self.alphas.iter().map(lin).collect();
        let den: Vec<String> = self.deltas.iter().map(lin).collect();
        let mut s = fmt_rational(&self.constant);
        if !num.is_empty() {
            s = format!("{s}*{}", num.join("*"));
        }
        if !den.is_empty() {
            s = format!("{s}/({})", den.join("*"));
        }
        s
    }
}

/// Splits a univariate rational function into linear factors over ℚ.
pub fn factor_linear(f: &RationalFunction, var: Var) -> Result<LinearFactorization> {
    let num = UniPoly::from_poly(f.numer(), var)?;
    let den = UniPoly::from_poly(f.denom(), var)?;
    if num.is_zero() {
        return Ok(LinearFactorization {
            constant: Rational::zero(),
            alphas: vec![],
            deltas: vec![],
        });
    }
    let (nr, nrest) = uni_rational_roots(&num);
    let (dr, drest) = uni_rational_roots(&den);
    for rest in [&nrest, &drest] {
        if rest.degree() > 0 {
            return Err(Error::NonLinearRemainder {
                degree: rest.degree(),
                factor: rest.monic().to_poly(var).to_string(),
            });
        }
    }
    Ok(LinearFactorization {
        constant: num.lc() / den.lc(),
        alphas: nr.into_iter().map(|r| -r).collect(),
        deltas: dr.into_iter().map(|r| -r).collect(),
    })
}

/// Small helper for callers holding machine integers.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    factor_integer(&BigUint::from(n))
        .into_iter()
        .map(|(p, e)| (p.to_u64().expect("factor of u64"), e))
        .collect()
}

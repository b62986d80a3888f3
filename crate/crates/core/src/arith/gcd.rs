//! Multivariate gcd and resultants by subresultant pseudo-remainder sequences.

use super::poly::{Polynomial, Var};
use super::unipoly::UniPoly;

fn var_pow(v: Var, k: usize) -> Polynomial {
    Polynomial::var(v).pow(k as u32)
}

/// Pseudo-remainder of `a` by `b` with respect to `v`:
/// `lc(b)^(deg a - deg b + 1) * a mod b`.
pub fn pseudo_rem(a: &Polynomial, b: &Polynomial, v: Var) -> Polynomial {
    let db = b.degree_in(v);
    let da = a.degree_in(v);
    if a.is_zero() || da < db {
        return a.clone();
    }
    let lb = b.lc_in(v);
    let mut r = a.clone();
    let mut e = da - db + 1;
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let s = &r.lc_in(v) * &var_pow(v, dr - db);
        r = &(&lb * &r) - &(&s * b);
        e -= 1;
    }
    &lb.pow(e as u32) * &r
}

/// gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &Polynomial, v: Var) -> Polynomial {
    let mut g = Polynomial::zero();
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return Polynomial::one();
        }
    }
    g
}

/// Monic gcd (leading grlex coefficient 1). `gcd(0, 0) = 0`.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return Polynomial::one();
    }
    let (small, large) = if p.num_terms() <= q.num_terms() { (p, q) } else { (q, p) };
    if large.div_exact(small).is_some() {
        return small.monic();
    }
    let pv = p.vars();
    let qv = q.vars();
    // A variable present on one side only enters through that side's content.
    if let Some(&v) = pv.iter().find(|v| !qv.contains(v)) {
        return gcd(&content_in(p, v), q);
    }
    if let Some(&v) = qv.iter().find(|v| !pv.contains(v)) {
        return gcd(p, &content_in(q, v));
    }
    if pv.len() > 1 && coprime_by_images(p, q, &pv) {
        return Polynomial::one();
    }
    if pv.len() == 1 {
        let v = pv[0];
        let a = UniPoly::from_poly(p, v).expect("univariate");
        let b = UniPoly::from_poly(q, v).expect("univariate");
        return a.gcd(&b).to_poly(v);
    }
    let v = *pv
        .iter()
        .min_by_key(|&&v| (p.degree_in(v).max(q.degree_in(v)), v.index()))
        .unwrap();
    let cp = content_in(p, v);
    let cq = content_in(q, v);
    let pp = p.div_exact(&cp).expect("content divides");
    let qq = q.div_exact(&cq).expect("content divides");
    let gc = gcd(&cp, &cq);
    let s = subresultant_last(&pp, &qq, v);
    let gs = if s.degree_in(v) == 0 {
        Polynomial::one()
    } else {
        let c = content_in(&s, v);
        s.div_exact(&c).expect("content divides")
    };
    (&gc * &gs).monic()
}

/// Certifies `gcd(p, q) = 1` when, for every variable `v`, some specialization
/// of the other variables keeps both `v`-degrees and has coprime images.
fn coprime_by_images(p: &Polynomial, q: &Polynomial, vars: &[Var]) -> bool {
    const SEEDS: [i64; 4] = [3, 7, 13, 29];
    vars.iter().all(|&v| {
        SEEDS.iter().any(|&seed| {
            let mut pi = p.clone();
            let mut qi = q.clone();
            for (i, &w) in vars.iter().enumerate() {
                if w != v {
                    let x = super::rational::int(seed * (i as i64 + 2) + 1);
                    pi = pi.eval_var(w, &x);
                    qi = qi.eval_var(w, &x);
                }
            }
            if pi.degree_in(v) != p.degree_in(v) || qi.degree_in(v) != q.degree_in(v) {
                return false;
            }
            let a = UniPoly::from_poly(&pi, v).expect("univariate image");
            let b = UniPoly::from_poly(&qi, v).expect("univariate image");
            a.gcd(&b).degree() == 0
        })
    })
}

/// Last nonzero element of the subresultant PRS of `a` and `b` in `v`.
fn subresultant_last(a: &Polynomial, b: &Polynomial, v: Var) -> Polynomial {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(v) == 0 {
            return r;
        }
        let divisor = &g * &h.pow(delta as u32);
        a = b;
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = a.lc_in(v);
        h = next_h(&h, &g, delta);
    }
}

fn next_h(h: &Polynomial, g: &Polynomial, delta: usize) -> Polynomial {
    match delta {
        0 => h.clone(),
        1 => g.clone(),
        _ => g
            .pow(delta as u32)
            .div_exact(&h.pow(delta as u32 - 1))
            .expect("subresultant division is exact"),
    }
}

/// Resultant of `a` and `b` with respect to `v`.
pub fn resultant(a: &Polynomial, b: &Polynomial, v: Var) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = Polynomial::one();
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
        if a.degree_in(v) % 2 == 1 && b.degree_in(v) % 2 == 1 {
            sign = -sign;
        }
    }
    if b.degree_in(v) == 0 {
        return &sign * &b.pow(a.degree_in(v) as u32);
    }
    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let da = a.degree_in(v);
        let db = b.degree_in(v);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = pseudo_rem(&a, &b, v);
        let divisor = &g * &h.pow(delta as u32);
        a = b;
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = a.lc_in(v);
        h = next_h(&h, &g, delta);
        if b.is_zero() {
            return Polynomial::zero();
        }
        if b.degree_in(v) == 0 {
            let da = a.degree_in(v) as u32;
            let num = b.pow(da);
            let res = if da == 0 {
                &num * &h
            } else {
                num.div_exact(&h.pow(da - 1)).expect("subresultant division is exact")
            };
            return &sign * &res;
        }
    }
}

pub fn lcm(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() || q.is_zero() {
        return Polynomial::zero();
    }
    let g = gcd(p, q);
    (p * &q.div_exact(&g).expect("gcd divides")).monic()
}

/// True when `p` and `q` agree up to a nonzero rational factor.
pub fn proportional(p: &Polynomial, q: &Polynomial) -> bool {
    if p.is_zero() || q.is_zero() {
        return p.is_zero() && q.is_zero();
    }
    p.monic() == q.monic()
}

//! Gosper's algorithm in `n`, with a parametrized right-hand side for
//! creative telescoping.

use num_traits::{One, Signed};

use super::linsolve::nullspace_vector;
use crate::arith::gcd::{gcd, resultant};
use crate::arith::rational::{int, is_integer, rat, to_i64};
use crate::arith::roots::rational_roots;
use crate::arith::{Polynomial, Rational, RationalFunction, Var};
use crate::error::{Error, Result};

/// Degree cap for the polynomial ansatz.
const MAX_DEGREE: i64 = 200;

/// `r(n) = a(n)/b(n) · c(n+1)/c(n)` with `gcd(a(n), b(n+h)) = 1` for `h >= 0`.
#[derive(Clone, Debug)]
pub struct GosperForm {
    pub a: Polynomial,
    pub b: Polynomial,
    pub c: Polynomial,
}

fn shift_n(p: &Polynomial, h: i64) -> Polynomial {
    p.shift(Var::N, &int(h))
}

/// Generic values for the symbols other than `n`; rejected when a degree in `n`
/// drops.
fn specialize(ps: &[&Polynomial]) -> Vec<Polynomial> {
    let others = [Var::A, Var::B, Var::C, Var::Z, Var::T, Var::D];
    for attempt in 0..8i64 {
        let point: Vec<(Var, Polynomial)> = others
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, Polynomial::constant(rat(1009 + 97 * attempt + 31 * i as i64, 17 + 2 * i as i64 + attempt))))
            .collect();
        let out: Vec<Polynomial> = ps.iter().map(|p| p.substitute(&point)).collect();
        if out.iter().zip(ps).all(|(q, p)| q.degree_in(Var::N) == p.degree_in(Var::N)) {
            return out;
        }
    }
    ps.iter().map(|p| (*p).clone()).collect()
}

/// Nonnegative integers `h` for which `a(n)` and `b(n+h)` may share a factor.
fn dispersion_candidates(a: &Polynomial, b: &Polynomial) -> Vec<i64> {
    if a.degree_in(Var::N) == 0 || b.degree_in(Var::N) == 0 {
        return vec![];
    }
    let s = specialize(&[a, b]);
    // the shift h lives in t once everything else is numeric
    let bs = s[1].substitute(&[(Var::N, &Polynomial::var(Var::N) + &Polynomial::var(Var::T))]);
    let r = resultant(&s[0], &bs, Var::N);
    let mut hs: Vec<i64> = match rational_roots(&r, Var::T) {
        Ok(roots) => roots.iter().filter(|x| is_integer(x) && !x.is_negative()).filter_map(to_i64).collect(),
        Err(_) => vec![],
    };
    if r.is_zero() {
        // degenerate specialization; fall back to a bounded scan
        hs = (0..=MAX_DEGREE).collect();
    }
    hs.sort_unstable();
    hs.dedup();
    hs
}

pub fn gosper_form(r: &RationalFunction) -> GosperForm {
    let mut a = r.numer().clone();
    let mut b = r.denom().clone();
    let mut c = Polynomial::one();
    for h in dispersion_candidates(&a, &b) {
        let g = gcd(&a, &shift_n(&b, h));
        if g.degree_in(Var::N) == 0 {
            continue;
        }
        a = a.div_exact(&g).expect("gcd divides");
        b = b.div_exact(&shift_n(&g, -h)).expect("shifted gcd divides");
        for j in 1..=h {
            c = &c * &shift_n(&g, -j);
        }
    }
    GosperForm { a, b, c }
}

/// Upper bound for `deg x` in `a(n) x(n+1) - b(n-1) x(n) = c(n)` given
/// `deg c <= deg_c`; `None` when no polynomial solution can exist.
fn degree_bound(a: &Polynomial, b1: &Polynomial, deg_c: i64) -> Option<i64> {
    let da = a.degree_in(Var::N) as i64;
    let db = b1.degree_in(Var::N) as i64;
    let la = a.lc_in(Var::N);
    let lb = b1.lc_in(Var::N);
    let bound = if da != db || la != lb {
        deg_c - da.max(db)
    } else if da == 0 {
        deg_c + 1
    } else {
        let diff = a - b1;
        let e = diff.coeffs_in(Var::N).get(da as usize - 1).cloned().unwrap_or_else(Polynomial::zero);
        let mut d = deg_c - da + 1;
        if let Some(q) = RationalFunction::new(e, la.clone()).ok().and_then(|x| x.constant_value()) {
            let cand = -q;
            if is_integer(&cand) && !cand.is_negative() {
                d = d.max(to_i64(&cand).unwrap_or(-1));
            }
        }
        d
    };
    (bound >= 0).then_some(bound.min(MAX_DEGREE))
}

/// Solution of the parametrized Gosper equation
/// `a(n) x(n+1) - b(n-1) x(n) = c(n) · Σ ηᵢ Pᵢ(n)`.
pub struct ParamSolution {
    pub eta: Vec<Polynomial>,
    pub x: Polynomial,
}

pub fn solve_parametrized(form: &GosperForm, rhs: &[Polynomial]) -> Option<ParamSolution> {
    let b1 = shift_n(&form.b, -1);
    let rhs: Vec<Polynomial> = rhs.iter().map(|p| &form.c * p).collect();
    let deg_c = rhs.iter().map(|p| p.degree_in(Var::N) as i64).max()?;
    let dx = degree_bound(&form.a, &b1, deg_c)?;
    let nx = dx as usize + 1;
    let ne = rhs.len();
    // columns: x_0..x_dx, then eta_0..eta_{ne-1}
    let mut cols: Vec<Polynomial> = Vec::with_capacity(nx + ne);
    let n = Polynomial::var(Var::N);
    let n1 = shift_n(&n, 1);
    let (mut pn, mut pn1) = (Polynomial::one(), Polynomial::one());
    for _ in 0..nx {
        cols.push(&(&form.a * &pn1) - &(&b1 * &pn));
        pn = &pn * &n;
        pn1 = &pn1 * &n1;
    }
    for p in &rhs {
        cols.push(-p);
    }
    let coeffs: Vec<Vec<Polynomial>> = cols.iter().map(|c| c.coeffs_in(Var::N)).collect();
    let nrows = coeffs.iter().map(|c| c.len()).max().unwrap_or(0);
    let rows: Vec<Vec<Polynomial>> = (0..nrows)
        .map(|k| coeffs.iter().map(|c| c.get(k).cloned().unwrap_or_else(Polynomial::zero)).collect())
        .collect();
    let wanted: Vec<usize> = (nx..nx + ne).collect();
    let v = nullspace_vector(rows, nx + ne, &wanted)?;
    let x = Polynomial::from_coeffs_in(Var::N, &v[..nx]);
    Some(ParamSolution { eta: v[nx..].to_vec(), x })
}

/// Multiplier `ρ(n)` with `G(n) = ρ(n)·T(n)` and `G(n+1) - G(n) = T(n)`, for a
/// term with `T(n+1)/T(n) = ratio`.
pub fn gosper(ratio: &RationalFunction) -> Result<RationalFunction> {
    let form = gosper_form(ratio);
    let sol = solve_parametrized(&form, &[Polynomial::one()]).ok_or(Error::NotGosperSummable)?;
    let lambda = &sol.eta[0];
    let b1 = shift_n(&form.b, -1);
    RationalFunction::new(&b1 * &sol.x, &form.c * lambda)
}

/// Checks `ρ(n+1)·ratio(n) - ρ(n) = 1`.
pub fn check_gosper(ratio: &RationalFunction, rho: &RationalFunction) -> bool {
    let next = rho.shift(Var::N, &Rational::one());
    (&(&next * ratio) - rho).is_one()
}

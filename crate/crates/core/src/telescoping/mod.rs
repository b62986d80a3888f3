//! Creative telescoping over the shift parameter `t` for hypergeometric term
//! families `A(t, n) = ∏(uᵢ(t))ₙ / (∏(lⱼ(t))ₙ (1)ₙ) · zⁿ`, and WZ pair checks.

pub mod gosper;
pub mod linsolve;

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::rational::{int, is_integer, to_i64};
use crate::arith::{lcm, rational_roots, LinearForm, Polynomial, Rational, RationalFunction, Var};
use crate::contiguity::ShiftVector;
use crate::error::{Error, Result};
use crate::identity::{IdentityKind, IdentityRecord};
use crate::numerics::{hyper_value, BigFloat};
use crate::recurrence::{Certificate, Recurrence};

pub use gosper::{check_gosper, gosper};

pub const MAX_ORDER: usize = 4;
pub const DEFAULT_MAX_ORDER: usize = 3;

/// `scale · Ψ(t) · ∏(uᵢ)ₙ / (∏(lⱼ)ₙ n!) · zⁿ` where `Ψ(t+1)/Ψ(t) = t_ratio`.
/// The `n!` is always present; a `1` among the upper entries cancels it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperTermFamily {
    pub upper: Vec<LinearForm>,
    pub lower: Vec<LinearForm>,
    /// Rational constant or the symbol `z`.
    pub z: Polynomial,
    pub scale: Rational,
    pub t_ratio: RationalFunction,
}

fn n_poly() -> Polynomial {
    Polynomial::var(Var::N)
}

fn shift_n(p: &Polynomial, h: i64) -> Polynomial {
    p.shift(Var::N, &int(h))
}

impl HyperTermFamily {
    pub fn new(upper: Vec<LinearForm>, lower: Vec<LinearForm>, z: Rational) -> Self {
        HyperTermFamily::with_z(upper, lower, Polynomial::constant(z))
    }

    pub fn with_z(upper: Vec<LinearForm>, lower: Vec<LinearForm>, z: Polynomial) -> Self {
        HyperTermFamily { upper, lower, z, scale: Rational::one(), t_ratio: RationalFunction::one() }
    }

    /// Parses comma-separated linear forms such as `1/2, t, 1-t`.
    pub fn parse(upper: &str, lower: &str, z: &str) -> Result<Self> {
        let list = |s: &str| -> Result<Vec<LinearForm>> {
            s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(LinearForm::parse).collect()
        };
        let z = crate::arith::parse_polynomial(z)?;
        if z.vars().iter().any(|&v| v != Var::Z) {
            return Err(Error::Parse { offset: 0, message: format!("argument must be rational or z: {z}") });
        }
        Ok(HyperTermFamily::with_z(list(upper)?, list(lower)?, z))
    }

    /// The zero term.
    pub fn zero() -> Self {
        HyperTermFamily { scale: Rational::zero(), ..HyperTermFamily::new(vec![], vec![], Rational::one()) }
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    fn check(&self) -> Result<()> {
        for l in self.upper.iter().chain(&self.lower) {
            if !is_integer(&l.slope) {
                return Err(Error::NotProper(format!("slope of {l} is not an integer")));
            }
            if l.constant.contains(Var::N) {
                return Err(Error::NotProper(format!("{l} involves n")));
            }
        }
        Ok(())
    }

    /// `A(t, n+1) / A(t, n)`.
    pub fn n_ratio(&self) -> Result<RationalFunction> {
        let mut num = self.z.clone();
        let mut den = &n_poly() + &Polynomial::one();
        for u in &self.upper {
            num = &num * &(&u.to_polynomial() + &n_poly());
        }
        for l in &self.lower {
            den = &den * &(&l.to_polynomial() + &n_poly());
        }
        RationalFunction::new(num, den)
    }

    /// `F(t+i, n) / F(t, n)` for the hypergeometric part alone.
    pub fn pure_shift_ratio(&self, i: i64) -> Result<RationalFunction> {
        self.check()?;
        let mut num = Polynomial::one();
        let mut den = Polynomial::one();
        let mut push = |l: &LinearForm, upper: bool| {
            let k = to_i64(&(&l.slope * int(i))).expect("integer slope");
            let u = l.to_polynomial();
            let (mut fnum, mut fden) = (Polynomial::one(), Polynomial::one());
            if k > 0 {
                for j in 0..k {
                    fnum = &fnum * &(&(&u + &n_poly()) + &Polynomial::constant(int(j)));
                    fden = &fden * &(&u + &Polynomial::constant(int(j)));
                }
            } else {
                for j in 1..=-k {
                    fnum = &fnum * &(&u - &Polynomial::constant(int(j)));
                    fden = &fden * &(&(&u + &n_poly()) - &Polynomial::constant(int(j)));
                }
            }
            if upper {
                num = &num * &fnum;
                den = &den * &fden;
            } else {
                num = &num * &fden;
                den = &den * &fnum;
            }
        };
        for u in &self.upper {
            push(u, true);
        }
        for l in &self.lower {
            push(l, false);
        }
        RationalFunction::new(num, den)
    }

    /// `A(t+1, n) / A(t, n)`, including the `t`-only prefactor.
    pub fn t_shift_ratio(&self) -> Result<RationalFunction> {
        Ok(&self.pure_shift_ratio(1)? * &self.t_ratio)
    }

    /// Parameters at `t = x`.
    pub fn at(&self, x: &Rational) -> Result<(Vec<Rational>, Vec<Rational>, Rational)> {
        let eval = |ls: &[LinearForm]| -> Result<Vec<Rational>> {
            ls.iter()
                .map(|l| l.at_rational(x).ok_or_else(|| Error::Eval(format!("{l} is symbolic"))))
                .collect()
        };
        let z = self.z.constant_value().ok_or_else(|| Error::Eval("argument is symbolic".into()))?;
        Ok((eval(&self.upper)?, eval(&self.lower)?, z))
    }

    /// `Σₙ F(t, n)` at a rational `t`, as a high-precision value.
    pub fn sum(&self, x: &Rational, prec: usize) -> Result<BigFloat> {
        let (u, l, z) = self.at(x)?;
        let v = hyper_value(&u, &l, &z, prec)?.to_bigfloat(prec);
        Ok(v * BigFloat::from_rational(&self.scale, prec))
    }
}

impl fmt::Display for HyperTermFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |ls: &[LinearForm]| ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "{}F{}([{}]; [{}] | {})", self.upper.len(), self.lower.len(), list(&self.upper), list(&self.lower), self.z)
    }
}

/// Residual of the telescoping identity
/// `Σ pᵢ(t) A(t+i, n)/A(t, n) = ρ(t, n+1) A(t, n+1)/A(t, n) - ρ(t, n)`.
pub fn certificate_residue(term: &HyperTermFamily, rec: &Recurrence) -> Result<RationalFunction> {
    let cert = rec.certificate.as_ref().ok_or_else(|| Error::Eval("recurrence has no certificate".into()))?;
    let mut lhs = RationalFunction::zero();
    for (i, p) in rec.coefficients.iter().enumerate() {
        let q = term.pure_shift_ratio(i as i64)?;
        lhs = &lhs + &(&RationalFunction::from_poly(p.clone()) * &q);
    }
    let next = cert.rho.shift(Var::N, &Rational::one());
    let rhs = &(&next * &term.n_ratio()?) - &cert.rho;
    Ok(&lhs - &rhs)
}

/// `F(t+i, n)/F(t, n) = (kn/kd) · ∏(n+αᵢ) / ∏(n+βⱼ)`.
struct ShiftFactors {
    kn: Polynomial,
    kd: Polynomial,
    num: Vec<Polynomial>,
    den: Vec<Polynomial>,
}

fn cancel_common(num: &mut Vec<Polynomial>, den: &mut Vec<Polynomial>) {
    let mut i = 0;
    while i < num.len() {
        if let Some(j) = den.iter().position(|d| *d == num[i]) {
            den.swap_remove(j);
            num.swap_remove(i);
        } else {
            i += 1;
        }
    }
}

fn linear_product(alphas: &[Polynomial]) -> Polynomial {
    alphas.iter().fold(Polynomial::one(), |acc, a| &acc * &(&n_poly() + a))
}

impl HyperTermFamily {
    fn shift_factors(&self, i: i64) -> Result<ShiftFactors> {
        self.check()?;
        let mut f = ShiftFactors { kn: Polynomial::one(), kd: Polynomial::one(), num: vec![], den: vec![] };
        for (l, upper) in self.upper.iter().map(|l| (l, true)).chain(self.lower.iter().map(|l| (l, false))) {
            let k = to_i64(&(&l.slope * int(i))).expect("integer slope");
            let u = l.to_polynomial();
            // (u+k)_n/(u)_n as constant and n-linear parts
            let (mut cn, mut cd, mut ln, mut ld) = (Polynomial::one(), Polynomial::one(), vec![], vec![]);
            if k > 0 {
                for j in 0..k {
                    let x = &u + &Polynomial::constant(int(j));
                    cd = &cd * &x;
                    ln.push(x);
                }
            } else {
                for j in 1..=-k {
                    let x = &u - &Polynomial::constant(int(j));
                    cn = &cn * &x;
                    ld.push(x);
                }
            }
            if upper {
                f.kn = &f.kn * &cn;
                f.kd = &f.kd * &cd;
                f.num.extend(ln);
                f.den.extend(ld);
            } else {
                f.kn = &f.kn * &cd;
                f.kd = &f.kd * &cn;
                f.num.extend(ld);
                f.den.extend(ln);
            }
        }
        cancel_common(&mut f.num, &mut f.den);
        Ok(f)
    }
}

/// Gosper form of `z ∏(n+αᵢ)/∏(n+βⱼ)` by pairing factors whose offsets differ
/// by a nonnegative integer.
fn linear_gosper_form(z: &Polynomial, mut num: Vec<Polynomial>, mut den: Vec<Polynomial>) -> gosper::GosperForm {
    cancel_common(&mut num, &mut den);
    let mut pairs: Vec<(i64, usize, usize)> = Vec::new();
    for (i, a) in num.iter().enumerate() {
        for (j, b) in den.iter().enumerate() {
            if let Some(h) = (a - b).constant_value() {
                if is_integer(&h) && h >= Rational::zero() {
                    pairs.push((to_i64(&h).expect("small shift"), i, j));
                }
            }
        }
    }
    pairs.sort();
    let (mut used_n, mut used_d) = (vec![false; num.len()], vec![false; den.len()]);
    let mut c = Polynomial::one();
    for (h, i, j) in pairs {
        if used_n[i] || used_d[j] {
            continue;
        }
        used_n[i] = true;
        used_d[j] = true;
        for k in 0..h {
            c = &c * &(&(&n_poly() + &den[j]) + &Polynomial::constant(int(k)));
        }
    }
    let keep = |v: &[Polynomial], used: &[bool]| -> Vec<Polynomial> {
        v.iter().zip(used).filter(|(_, u)| !**u).map(|(x, _)| x.clone()).collect()
    };
    let a = z * &linear_product(&keep(&num, &used_n));
    let b = linear_product(&keep(&den, &used_d));
    gosper::GosperForm { a, b, c }
}

/// Creative telescoping at a fixed order `r`; `None` when the ansatz has no
/// solution.
pub fn telescope_order(term: &HyperTermFamily, r: usize) -> Result<Option<Recurrence>> {
    if !term.t_ratio.is_one() {
        return Err(Error::NotProper("telescoping needs a term without t-only prefactor".into()));
    }
    let shifts: Vec<ShiftFactors> = (0..=r as i64).map(|i| term.shift_factors(i)).collect::<Result<_>>()?;
    // common denominator D(n) with maximal multiplicities
    let mut d: Vec<Polynomial> = Vec::new();
    for s in &shifts {
        let mut have = d.clone();
        for x in &s.den {
            if let Some(p) = have.iter().position(|y| y == x) {
                have.swap_remove(p);
            } else {
                d.push(x.clone());
            }
        }
    }
    let mut l = Polynomial::one();
    for s in &shifts {
        l = lcm(&l, &s.kd);
    }
    let parts: Vec<Polynomial> = shifts
        .iter()
        .map(|s| {
            let mut rest = d.clone();
            for x in &s.den {
                let p = rest.iter().position(|y| y == x).expect("D contains every denominator");
                rest.swap_remove(p);
            }
            let k = &s.kn * &l.div_exact(&s.kd).expect("lcm divides");
            &(&k * &linear_product(&s.num)) * &linear_product(&rest)
        })
        .collect();
    let mut num: Vec<Polynomial> = term.upper.iter().map(|u| u.to_polynomial()).collect();
    num.extend(d.iter().cloned());
    let mut den: Vec<Polynomial> = term.lower.iter().map(|u| u.to_polynomial()).collect();
    den.push(Polynomial::one());
    den.extend(d.iter().map(|x| x + &Polynomial::one()));
    let form = linear_gosper_form(&term.z, num, den);
    let Some(sol) = gosper::solve_parametrized(&form, &parts) else {
        return Ok(None);
    };
    let b1 = shift_n(&form.b, -1);
    let rho = RationalFunction::new(&b1 * &sol.x, &(&form.c * &linear_product(&d)) * &l)?;
    let inhomogeneity = match rho.eval_var(Var::N, &Rational::zero()) {
        Ok(g0) if !g0.is_zero() => Some(-g0.scale(&term.scale)),
        _ => None,
    };
    let rec = Recurrence {
        coefficients: sol.eta,
        inhomogeneity,
        certificate: Some(Certificate { rho }),
    }
    .normalized();
    let residue = certificate_residue(term, &rec)?;
    if !residue.is_zero() {
        return Err(Error::Eval(format!("certificate check failed: {residue}")));
    }
    Ok(Some(rec))
}

/// Minimal-order recurrence in `t` for `Σₙ A(t, n)`, trying `r = 1, 2, ...`.
pub fn zeilberger(term: &HyperTermFamily, max_order: usize) -> Result<Recurrence> {
    if max_order == 0 || max_order > MAX_ORDER {
        return Err(Error::Eval(format!("max order must lie in 1..={MAX_ORDER}, got {max_order}")));
    }
    for r in 1..=max_order {
        if let Some(rec) = telescope_order(term, r)? {
            return Ok(rec);
        }
    }
    Err(Error::NoRecurrenceFound(max_order))
}

/// For an order-2 recurrence, the `t`-coefficients of the middle coefficient;
/// all zero means a first-order equation under `t -> t+2`.
pub fn step_two_conditions(rec: &Recurrence) -> Option<Vec<Polynomial>> {
    (rec.order() == 2).then(|| rec.coefficients[1].coeffs_in(Var::T))
}

/// Outcome of a WZ pair check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WzCheck {
    pub holds: bool,
    /// `(A(t+1,n) - A(t,n) - B(t,n+1) + B(t,n)) / A(t,n)`.
    pub residue: RationalFunction,
}

/// Checks `A(t+1,n) - A(t,n) = B(t,n+1) - B(t,n)` with `B = multiplier · A`.
pub fn verify_wz_pair(a: &HyperTermFamily, multiplier: &RationalFunction) -> Result<WzCheck> {
    if a.scale.is_zero() {
        return Ok(WzCheck { holds: true, residue: RationalFunction::zero() });
    }
    let lhs = &a.t_shift_ratio()? - &RationalFunction::one();
    let next = multiplier.shift(Var::N, &Rational::one());
    let rhs = &(&next * &a.n_ratio()?) - multiplier;
    let residue = &lhs - &rhs;
    Ok(WzCheck { holds: residue.is_zero(), residue })
}

/// WZ pair `(Ψ·F, B/A)` from a first-order telescoping relation
/// `p₀ F(t) + p₁ F(t+1) = G(n+1) - G(n)`.
pub fn wz_pair(term: &HyperTermFamily, rec: &Recurrence) -> Result<(HyperTermFamily, RationalFunction)> {
    if rec.order() != 1 {
        return Err(Error::Eval(format!("WZ pair needs a first-order relation, got order {}", rec.order())));
    }
    let cert = rec.certificate.as_ref().ok_or_else(|| Error::Eval("recurrence has no certificate".into()))?;
    let p0 = RationalFunction::from_poly(rec.coefficients[0].clone());
    let p1 = RationalFunction::from_poly(rec.coefficients[1].clone());
    let mut a = term.clone();
    a.t_ratio = -(p1.checked_div(&p0)?);
    let b = -(cert.rho.checked_div(&p0)?);
    Ok((a, b))
}

/// Leading-coefficient probe for a shift vector.
#[derive(Clone, Debug)]
pub struct Probe {
    pub term: HyperTermFamily,
    pub recurrence: Recurrence,
    /// Leading `t`-coefficients of the first and last recurrence coefficients.
    pub leading: [Polynomial; 2],
    /// Their common `z`-factor with powers of `z` removed.
    pub content: Polynomial,
    /// Rational roots of `content` other than 0 and 1.
    pub candidates: Vec<Rational>,
}

/// Creative telescoping with `a = b = 0` and `c` in `{0, 1}` and symbolic `z`.
pub fn leading_coefficient_probe(gamma: ShiftVector) -> Result<Probe> {
    if gamma.is_zero() {
        return Err(Error::DegenerateShift("zero shift leaves the series unchanged".into()));
    }
    let [k, l, m] = gamma.components();
    let c = if m == k || m == l || m == 0 { Rational::one() } else { Rational::zero() };
    let lf = |c: Rational, s: i32| LinearForm::new(c, int(s as i64));
    let upper: Vec<LinearForm> = [k, l].iter().filter(|&&s| s != 0).map(|&s| lf(Rational::zero(), s)).collect();
    if upper.len() < 2 {
        return Err(Error::DegenerateShift(format!("an upper parameter of {gamma} stays at 0 and the series is 1")));
    }
    let term = HyperTermFamily::with_z(upper, vec![lf(c, m)], Polynomial::var(Var::Z));
    let recurrence = zeilberger(&term, 2)?;
    let first = recurrence.coefficients[0].lc_in(Var::T);
    let last = recurrence.coefficients.last().expect("nonempty").lc_in(Var::T);
    let mut content = crate::arith::gcd(&first, &last);
    while !content.is_zero() && content.constant_term().is_zero() && content.contains(Var::Z) {
        content = content.div_exact(&Polynomial::var(Var::Z)).expect("z divides");
    }
    let candidates = if content.contains(Var::Z) {
        rational_roots(&content, Var::Z)?.into_iter().filter(|r| !r.is_zero() && !r.is_one()).collect()
    } else {
        vec![]
    };
    Ok(Probe { term, recurrence, leading: [first, last], content, candidates })
}

/// `|Σ pᵢ(t) S(t+i) - h(t)|` relative to the largest summand, where `S` is the
/// numeric sum of the term.
pub fn numeric_residual(term: &HyperTermFamily, rec: &Recurrence, t: &Rational, prec: usize) -> Result<BigFloat> {
    let mut acc = BigFloat::zero(prec);
    let mut size = BigFloat::zero(prec);
    let mut add = |x: BigFloat| {
        if x.abs() > size {
            size = x.abs();
        }
        acc = &acc + &x;
    };
    for (i, p) in rec.coefficients.iter().enumerate() {
        let c = p
            .eval_var(Var::T, t)
            .constant_value()
            .ok_or_else(|| Error::Eval(format!("coefficient {p} is symbolic")))?;
        let s = term.sum(&(t + int(i as i64)), prec)?;
        add(s * BigFloat::from_rational(&c, prec));
    }
    if let Some(h) = &rec.inhomogeneity {
        let v = h.eval_var(Var::T, t)?.constant_value().ok_or_else(|| Error::Eval("symbolic inhomogeneity".into()))?;
        add(-BigFloat::from_rational(&v, prec));
    }
    if size.is_zero() {
        return Ok(acc.abs());
    }
    Ok(&acc.abs() / &size)
}

/// The recurrence as an identity record of kind `recurrence`.
pub fn recurrence_record(id: impl Into<String>, term: &HyperTermFamily, rec: &Recurrence) -> IdentityRecord {
    let text = rec.to_string();
    let (lhs, rhs) = text.split_once(" = ").unwrap_or((text.as_str(), "0"));
    let mut r = IdentityRecord::new(id, IdentityKind::Recurrence, lhs, rhs)
        .with_provenance(format!("F(t) = sum over n of {term}"))
        .with_provenance(format!("creative telescoping, order {}", rec.order()));
    if let Some(c) = &rec.certificate {
        r = r.with_provenance(format!("certificate rho(t,n) = {}", c.rho));
    }
    r
}

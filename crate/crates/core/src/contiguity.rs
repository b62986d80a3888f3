//! Transfer matrices for integer shifts of the parameters of ₂F₁.
//!
//! A transfer matrix maps `(F, F')` at `(a, b, c)` to `(F, F')` at the shifted
//! parameters, `F' = dF/dz`. Its first row is the pair `(R, Q)` of the
//! decomposition `F(β+γ) = R·F(β) + Q·F'(β)`.
//!
//! Matrices are kept as a polynomial matrix over a list of monic linear
//! denominator factors. Every factor produced by the elementary steps is linear
//! in `a, b, c, z`, so trial division is enough to reduce entries exactly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{parse_polynomial, LinearForm, Polynomial, Rational, RationalFunction, Var};
use crate::error::{Error, Result};
use crate::recurrence::Recurrence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i32; 3]", into = "[i32; 3]")]
pub struct ShiftVector {
    pub k: i32,
    pub l: i32,
    pub m: i32,
}

impl ShiftVector {
    pub const fn new(k: i32, l: i32, m: i32) -> Self {
        ShiftVector { k, l, m }
    }

    pub fn is_zero(&self) -> bool {
        self.k == 0 && self.l == 0 && self.m == 0
    }

    pub fn norm1(&self) -> u32 {
        self.k.unsigned_abs() + self.l.unsigned_abs() + self.m.unsigned_abs()
    }

    pub fn components(&self) -> [i32; 3] {
        [self.k, self.l, self.m]
    }

    pub fn parse(src: &str) -> Result<Self> {
        let parts: Vec<&str> = src.split(',').map(str::trim).collect();
        let bad = || Error::Parse { offset: 0, message: format!("expected k,l,m: {src:?}") };
        if parts.len() != 3 {
            return Err(bad());
        }
        let v: Vec<i32> = parts.iter().map(|p| p.parse().map_err(|_| bad())).collect::<Result<_>>()?;
        Ok(ShiftVector::new(v[0], v[1], v[2]))
    }
}

impl std::ops::Add for ShiftVector {
    type Output = ShiftVector;
    fn add(self, o: ShiftVector) -> ShiftVector {
        ShiftVector::new(self.k + o.k, self.l + o.l, self.m + o.m)
    }
}

impl From<[i32; 3]> for ShiftVector {
    fn from(v: [i32; 3]) -> Self {
        ShiftVector::new(v[0], v[1], v[2])
    }
}

impl From<ShiftVector> for [i32; 3] {
    fn from(s: ShiftVector) -> Self {
        s.components()
    }
}

impl fmt::Display for ShiftVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k, self.l, self.m)
    }
}

/// Parameters `(a, b, c)`, each a linear form in `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamVector {
    pub a: LinearForm,
    pub b: LinearForm,
    pub c: LinearForm,
}

impl ParamVector {
    /// `β₀ + tγ` with rational base point.
    pub fn family(base: [Rational; 3], shift: ShiftVector) -> Self {
        let [a, b, c] = base;
        let s = |x: i32| Rational::from_integer(x.into());
        ParamVector {
            a: LinearForm::new(a, s(shift.k)),
            b: LinearForm::new(b, s(shift.l)),
            c: LinearForm::new(c, s(shift.m)),
        }
    }

    /// Symbolic `(a + kt, b + lt, c + mt)`.
    pub fn symbolic(shift: ShiftVector) -> Self {
        let s = |x: i32| Rational::from_integer(x.into());
        ParamVector {
            a: LinearForm::symbolic(Polynomial::var(Var::A), s(shift.k)),
            b: LinearForm::symbolic(Polynomial::var(Var::B), s(shift.l)),
            c: LinearForm::symbolic(Polynomial::var(Var::C), s(shift.m)),
        }
    }

    pub fn slopes(&self) -> [Rational; 3] {
        [self.a.slope.clone(), self.b.slope.clone(), self.c.slope.clone()]
    }

    pub fn bindings(&self) -> Vec<(Var, Polynomial)> {
        vec![
            (Var::A, self.a.to_polynomial()),
            (Var::B, self.b.to_polynomial()),
            (Var::C, self.c.to_polynomial()),
        ]
    }

    /// Rational parameter values at `t = x`.
    pub fn at(&self, x: &Rational) -> Option<[Rational; 3]> {
        Some([self.a.at_rational(x)?, self.b.at_rational(x)?, self.c.at_rational(x)?])
    }
}

impl fmt::Display for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={}, b={}, c={}", self.a, self.b, self.c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    A,
    B,
    C,
}

/// `P / prod(den)` with monic denominator factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredMatrix {
    pub p: [[Polynomial; 2]; 2],
    pub den: Vec<Polynomial>,
}

fn poly(src: &str) -> Polynomial {
    parse_polynomial(src).expect("static polynomial")
}

impl FactoredMatrix {
    pub fn identity() -> Self {
        FactoredMatrix {
            p: [[Polynomial::one(), Polynomial::zero()], [Polynomial::zero(), Polynomial::one()]],
            den: Vec::new(),
        }
    }

    fn from_parts(p: [[&str; 2]; 2], den: &[&str]) -> Self {
        let m = FactoredMatrix {
            p: [[poly(p[0][0]), poly(p[0][1])], [poly(p[1][0]), poly(p[1][1])]],
            den: den.iter().map(|d| poly(d)).collect(),
        };
        m.renormalize().expect("static factors are nonzero")
    }

    /// Folds constant factors and leading coefficients of denominator factors
    /// into the numerator matrix.
    fn renormalize(mut self) -> Result<Self> {
        let mut den = Vec::with_capacity(self.den.len());
        let mut scale = Rational::from_integer(1.into());
        for f in self.den.drain(..) {
            if f.is_zero() {
                return Err(Error::DegenerateElimination(
                    "a denominator factor vanishes identically".into(),
                ));
            }
            let lc = f.leading_coefficient();
            scale *= &lc;
            if f.is_constant() {
                continue;
            }
            den.push(f.scale(&lc.recip()));
        }
        if scale != Rational::from_integer(1.into()) {
            let inv = scale.recip();
            for row in self.p.iter_mut() {
                for e in row.iter_mut() {
                    *e = e.scale(&inv);
                }
            }
        }
        self.den = den;
        Ok(self)
    }

    /// Polynomial substitution applied to numerator and factors.
    pub fn substitute(&self, bindings: &[(Var, Polynomial)]) -> Result<Self> {
        let p = [
            [self.p[0][0].substitute(bindings), self.p[0][1].substitute(bindings)],
            [self.p[1][0].substitute(bindings), self.p[1][1].substitute(bindings)],
        ];
        let den = self.den.iter().map(|f| f.substitute(bindings)).collect();
        let mut m = FactoredMatrix { p, den }.renormalize()?;
        m.cancel();
        Ok(m)
    }

    pub fn shift(&self, v: Var, h: &Rational) -> Self {
        FactoredMatrix {
            p: [
                [self.p[0][0].shift(v, h), self.p[0][1].shift(v, h)],
                [self.p[1][0].shift(v, h), self.p[1][1].shift(v, h)],
            ],
            den: self.den.iter().map(|f| f.shift(v, h)).collect(),
        }
    }

    /// `self * o`
    pub fn mul(&self, o: &FactoredMatrix) -> Self {
        let e = |i: usize, j: usize| &(&self.p[i][0] * &o.p[0][j]) + &(&self.p[i][1] * &o.p[1][j]);
        let mut den = self.den.clone();
        den.extend(o.den.iter().cloned());
        let mut m = FactoredMatrix { p: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]], den };
        m.cancel();
        m
    }

    /// Removes denominator factors dividing every entry.
    pub fn cancel(&mut self) {
        let mut i = 0;
        while i < self.den.len() {
            let f = &self.den[i];
            let q: Option<Vec<Polynomial>> =
                self.p.iter().flatten().map(|e| e.div_exact(f)).collect();
            match q {
                Some(q) => {
                    self.p = [[q[0].clone(), q[1].clone()], [q[2].clone(), q[3].clone()]];
                    self.den.remove(i);
                }
                None => i += 1,
            }
        }
    }

    pub fn den_product(&self) -> Polynomial {
        self.den.iter().fold(Polynomial::one(), |acc, f| &acc * f)
    }

    /// Entry `(i, j)` in lowest terms.
    pub fn entry(&self, i: usize, j: usize) -> RationalFunction {
        reduce_by_factors(&self.p[i][j], &self.den)
    }

    pub fn to_transfer(&self) -> TransferMatrix {
        TransferMatrix {
            entries: [[self.entry(0, 0), self.entry(0, 1)], [self.entry(1, 0), self.entry(1, 1)]],
        }
    }

    pub fn det_numerator(&self) -> Polynomial {
        &(&self.p[0][0] * &self.p[1][1]) - &(&self.p[0][1] * &self.p[1][0])
    }
}

/// `num / prod(factors)` reduced by trial division.
pub fn reduce_by_factors(num: &Polynomial, factors: &[Polynomial]) -> RationalFunction {
    if num.is_zero() {
        return RationalFunction::zero();
    }
    let mut n = num.clone();
    let mut den = Polynomial::one();
    for f in factors {
        match n.div_exact(f) {
            Some(q) => n = q,
            None => den = &den * f,
        }
    }
    RationalFunction::from_coprime(n, den).expect("nonzero denominator")
}

/// 2×2 matrix of rational functions in `a, b, c, z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    pub entries: [[RationalFunction; 2]; 2],
}

impl TransferMatrix {
    pub fn identity() -> Self {
        FactoredMatrix::identity().to_transfer()
    }

    pub fn det(&self) -> RationalFunction {
        let e = &self.entries;
        &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0])
    }

    pub fn mul(&self, o: &TransferMatrix) -> TransferMatrix {
        let e = |i: usize, j: usize| {
            &(&self.entries[i][0] * &o.entries[0][j]) + &(&self.entries[i][1] * &o.entries[1][j])
        };
        TransferMatrix { entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn substitute(&self, bindings: &[(Var, RationalFunction)]) -> Result<TransferMatrix> {
        let s = |f: &RationalFunction| f.substitute(bindings);
        Ok(TransferMatrix {
            entries: [
                [s(&self.entries[0][0])?, s(&self.entries[0][1])?],
                [s(&self.entries[1][0])?, s(&self.entries[1][1])?],
            ],
        })
    }
}

impl fmt::Display for TransferMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        writeln!(f, "[ {} , {} ]", e[0][0], e[0][1])?;
        write!(f, "[ {} , {} ]", e[1][0], e[1][1])
    }
}

/// Single unit step in one parameter, as a factored matrix.
pub fn elementary_factored(param: Param, direction: i32) -> FactoredMatrix {
    match (param, direction) {
        (Param::A, 1) => FactoredMatrix::from_parts(
            [["a*(1-z)", "z*(1-z)"], ["a*b", "a+1-c+b*z"]],
            &["a", "1-z"],
        ),
        (Param::B, 1) => FactoredMatrix::from_parts(
            [["b*(1-z)", "z*(1-z)"], ["a*b", "b+1-c+a*z"]],
            &["b", "1-z"],
        ),
        (Param::C, -1) => FactoredMatrix::from_parts(
            [["(c-1)*(1-z)", "z*(1-z)"], ["a*b", "(a+b+1-c)*z"]],
            &["c-1", "1-z"],
        ),
        (Param::A, -1) => FactoredMatrix::from_parts(
            [["a-c+b*z", "-z*(1-z)"], ["-(a-1)*b", "(a-1)*(1-z)"]],
            &["a-c"],
        ),
        (Param::B, -1) => FactoredMatrix::from_parts(
            [["b-c+a*z", "-z*(1-z)"], ["-(b-1)*a", "(b-1)*(1-z)"]],
            &["b-c"],
        ),
        (Param::C, 1) => FactoredMatrix::from_parts(
            [["-c*(a+b-c)*z", "c*z*(1-z)"], ["c*a*b", "-c^2*(1-z)"]],
            &["z", "c-a", "c-b"],
        ),
        _ => panic!("direction must be +1 or -1"),
    }
}

pub fn elementary_matrix(param: Param, direction: i32) -> TransferMatrix {
    elementary_factored(param, direction).to_transfer()
}

/// Ordered product of unit steps: a-steps, then b-steps, then c-steps, each
/// evaluated at the parameters reached so far.
pub fn shift_matrix_factored(gamma: ShiftVector) -> FactoredMatrix {
    let mut m = FactoredMatrix::identity();
    let mut offset = [0i32; 3];
    for (idx, (param, steps)) in [(Param::A, gamma.k), (Param::B, gamma.l), (Param::C, gamma.m)]
        .into_iter()
        .enumerate()
    {
        let dir = steps.signum();
        for _ in 0..steps.unsigned_abs() {
            let mut e = elementary_factored(param, dir);
            for (j, v) in [Var::A, Var::B, Var::C].into_iter().enumerate() {
                if offset[j] != 0 {
                    e = e.shift(v, &Rational::from_integer(offset[j].into()));
                }
            }
            m = e.mul(&m);
            offset[idx] += dir;
        }
    }
    m
}

pub fn shift_matrix(gamma: ShiftVector) -> TransferMatrix {
    shift_matrix_factored(gamma).to_transfer()
}

/// `F(β+γ) = R·F(β) + Q·F'(β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContiguousDecomposition {
    pub shift: ShiftVector,
    pub r: RationalFunction,
    pub q: RationalFunction,
}

pub fn decomposition(gamma: ShiftVector) -> ContiguousDecomposition {
    let m = shift_matrix_factored(gamma);
    ContiguousDecomposition { shift: gamma, r: m.entry(0, 0), q: m.entry(0, 1) }
}

/// Recurrence for `f(t) = F(β₀ + tγ | z)` obtained by eliminating `F'` from two
/// consecutive transfer steps. With `z = None` the argument stays symbolic.
pub fn order2_recurrence(gamma: ShiftVector, family: &ParamVector, z: Option<&Rational>) -> Result<Recurrence> {
    let s = |x: i32| Rational::from_integer(x.into());
    if family.slopes() != [s(gamma.k), s(gamma.l), s(gamma.m)] {
        return Err(Error::DegenerateShift(format!(
            "family slopes do not match shift {gamma}"
        )));
    }
    let mut bindings = family.bindings();
    if let Some(z0) = z {
        bindings.push((Var::Z, Polynomial::constant(z0.clone())));
    }
    let m0 = shift_matrix_factored(gamma).substitute(&bindings)?;
    let m1 = m0.shift(Var::T, &s(1));
    let delta0 = m0.den_product();
    if m0.p[0][1].is_zero() {
        return Ok(Recurrence::homogeneous(vec![m0.p[0][0].clone(), -delta0]));
    }
    let delta1 = m1.den_product();
    let p2 = &(&m0.p[0][1] * &delta0) * &delta1;
    let p1 = -(&(&(&m1.p[0][0] * &m0.p[0][1]) + &(&m1.p[0][1] * &m0.p[1][1])) * &delta0);
    let p0 = &m1.p[0][1] * &m0.det_numerator();
    let mut coeffs = vec![p0, p1, p2];
    for f in m0.den.iter().chain(m1.den.iter()) {
        let q: Option<Vec<Polynomial>> = coeffs.iter().map(|c| c.div_exact(f)).collect();
        if let Some(q) = q {
            coeffs = q;
        }
    }
    if coeffs.iter().all(|c| c.is_zero()) {
        return Err(Error::DegenerateElimination("all coefficients vanish".into()));
    }
    Ok(Recurrence::homogeneous(coeffs))
}

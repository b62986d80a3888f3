//! Admissible families: base points β₀ and arguments z₀ for which the
//! derivative coefficient of a shift decomposition vanishes along β₀ + tγ.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::gcd::{gcd, resultant};
use crate::arith::roots::uni_rational_roots;
use crate::arith::{LinearForm, Polynomial, Rational, UniPoly, Var};
use crate::contiguity::{shift_matrix_factored, ParamVector, ShiftVector};
use crate::error::{Error, Result};

/// Numerator of `Q_γ(β + tγ, z)` collected in `t`, with its content removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityPolynomial {
    pub shift: ShiftVector,
    /// Indexed by the power of `t`.
    pub coefficients: Vec<Polynomial>,
    /// Factor removed from the numerator: the content in `t` times linear
    /// factors that cannot vanish identically in `t`.
    pub content: Polynomial,
    /// Denominator factors of the shift matrix along `β + tγ`.
    pub singular_factors: Vec<Polynomial>,
}

impl AdmissibilityPolynomial {
    pub fn as_polynomial(&self) -> Polynomial {
        Polynomial::from_coeffs_in(Var::T, &self.coefficients)
    }

    /// Every coefficient vanishes at the family's base point and `z0`.
    pub fn vanishes_on(&self, family: &AdmissibleFamily) -> bool {
        let bind = base_bindings(family);
        self.coefficients.iter().all(|c| c.substitute(&bind).is_zero())
    }

    /// The shift matrix is singular along the whole family.
    pub fn degenerate_on(&self, family: &AdmissibleFamily) -> bool {
        let bind = base_bindings(family);
        self.singular_factors.iter().any(|f| f.substitute(&bind).is_zero())
    }
}

/// `{a, b, c, z} -> {a₀, b₀, c₀, z₀}`; the `t`-dependence is already in the polynomials.
fn base_bindings(family: &AdmissibleFamily) -> [(Var, Polynomial); 4] {
    [
        (Var::A, family.params.a.constant.clone()),
        (Var::B, family.params.b.constant.clone()),
        (Var::C, family.params.c.constant.clone()),
        (Var::Z, Polynomial::constant(family.z0.clone())),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleFamily {
    pub shift: ShiftVector,
    /// `β₀ + tγ`; a constant part may stay symbolic when a parameter is free.
    pub params: ParamVector,
    pub z0: Rational,
}

impl AdmissibleFamily {
    pub fn new(shift: ShiftVector, base: [Rational; 3], z0: Rational) -> Self {
        AdmissibleFamily { shift, params: ParamVector::family(base, shift), z0 }
    }

    pub fn base(&self) -> Option<[Rational; 3]> {
        self.params.at(&Rational::zero())
    }

    pub fn is_symbolic(&self) -> bool {
        self.base().is_none()
    }
}

impl std::fmt::Display for AdmissibleFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "z0={}, {}", crate::arith::rational::fmt_rational(&self.z0), self.params)
    }
}

/// JSON row emitted by the search driver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub shift: ShiftVector,
    pub z0: String,
    pub a0: String,
    pub b0: String,
    pub c0: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl From<&AdmissibleFamily> for FamilyRecord {
    fn from(f: &AdmissibleFamily) -> Self {
        FamilyRecord {
            shift: f.shift,
            z0: crate::arith::rational::fmt_rational(&f.z0),
            a0: f.params.a.constant.to_string(),
            b0: f.params.b.constant.to_string(),
            c0: f.params.c.constant.to_string(),
            status: "solved".into(),
            diagnostic: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveResult {
    pub families: Vec<AdmissibleFamily>,
    /// Branches the elimination ladder could not finish.
    pub unsolved: Vec<String>,
}

impl SolveResult {
    pub fn records(&self, shift: ShiftVector) -> Vec<FamilyRecord> {
        let mut out: Vec<FamilyRecord> = self.families.iter().map(FamilyRecord::from).collect();
        for d in &self.unsolved {
            out.push(FamilyRecord {
                shift,
                z0: String::new(),
                a0: String::new(),
                b0: String::new(),
                c0: String::new(),
                status: "unsolved".into(),
                diagnostic: Some(d.clone()),
            });
        }
        out
    }
}

const PARAMS: [Var; 3] = [Var::A, Var::B, Var::C];

pub fn admissibility_polynomial(gamma: ShiftVector) -> Result<AdmissibilityPolynomial> {
    if gamma.is_zero() {
        return Err(Error::ZeroQ);
    }
    let m = shift_matrix_factored(gamma);
    let q = m.entry(0, 1);
    if q.is_zero() {
        return Err(Error::ZeroQ);
    }
    let bind = ParamVector::symbolic(gamma).bindings();

    // factors that acquire a nonzero t-slope can never vanish identically in t
    let mut num = q.numer().clone();
    let mut removed = Polynomial::one();
    for (x, j) in removable_factors(gamma) {
        let f = &x + &Polynomial::from_i64(j);
        while vanishes_at_root(&num, &x, j) {
            num = num.div_exact(&f).expect("root test implies divisibility");
            removed = &removed * &f;
        }
    }

    let mut coefficients = num.substitute(&bind).coeffs_in(Var::T);
    let mut by_size: Vec<&Polynomial> = coefficients.iter().collect();
    by_size.sort_by_key(|c| c.num_terms());
    let mut g = Polynomial::zero();
    for c in by_size {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    for c in coefficients.iter_mut() {
        *c = c.div_exact(&g).expect("content divides");
    }
    // integer coefficients, positive leading coefficient on the top power
    let (scale, _) = Polynomial::from_coeffs_in(Var::T, &coefficients).primitive_integer();
    let lead_negative = coefficients.last().unwrap().leading_coefficient().is_negative();
    let scale = if lead_negative != scale.is_negative() { -scale } else { scale };
    let inv = scale.recip();
    for c in coefficients.iter_mut() {
        *c = c.scale(&inv);
    }
    let content = (&removed.substitute(&bind) * &g).scale(&scale);
    let singular_factors = m.den.iter().map(|d| d.substitute(&bind)).collect();
    Ok(AdmissibilityPolynomial { shift: gamma, coefficients, content, singular_factors })
}

/// Parameter combinations `x` occurring in contiguity denominators whose
/// slope along `γ` is nonzero, paired with integer offsets `j`.
fn removable_factors(gamma: ShiftVector) -> Vec<(Polynomial, i64)> {
    let [k, l, m] = gamma.components();
    let v = Polynomial::var;
    let combos: [(Polynomial, i32); 7] = [
        (v(Var::A), k),
        (v(Var::B), l),
        (v(Var::C), m),
        (&v(Var::C) - &v(Var::A), m - k),
        (&v(Var::C) - &v(Var::B), m - l),
        (&v(Var::A) - &v(Var::B), k - l),
        (&(&v(Var::C) - &v(Var::A)) - &v(Var::B), m - k - l),
    ];
    let reach = 2 * gamma.norm1() as i64 + 2;
    let mut out = Vec::new();
    for (x, s) in combos {
        if s == 0 {
            continue;
        }
        for j in -reach..=reach {
            out.push((x.clone(), j));
        }
    }
    out
}

/// `x + j` divides `p`, where `x` is a combination whose first variable
/// in the order c, b, a has coefficient ±1.
fn vanishes_at_root(p: &Polynomial, x: &Polynomial, j: i64) -> bool {
    let pivot = [Var::C, Var::B, Var::A].into_iter().find(|v| x.contains(*v)).expect("parameter combination");
    let coeff = x.coeffs_in(pivot)[1].constant_value().expect("linear combination");
    let rest = x - &Polynomial::var(pivot).scale(&coeff);
    // pivot = -(rest + j) / coeff
    let root = (&rest + &Polynomial::from_i64(j)).scale(&-coeff.recip());
    // cheap numeric screen before the exact substitution
    let mut point: [Rational; 7] = std::array::from_fn(|i| Rational::from_integer((11 + 6 * i as i64).into()));
    point[pivot.index()] = root.eval_point(&point);
    if !p.eval_point(&point).is_zero() {
        return false;
    }
    p.substitute(&[(pivot, root)]).is_zero()
}

type Assignment = BTreeMap<Var, Rational>;

struct Solutions {
    points: Vec<Assignment>,
    unsolved: Vec<String>,
}

fn clean(eqs: Vec<Polynomial>) -> Option<Vec<Polynomial>> {
    let mut out: Vec<Polynomial> = Vec::new();
    for e in eqs {
        if e.is_zero() {
            continue;
        }
        if e.is_constant() {
            return None;
        }
        let m = e.monic();
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Some(out)
}

fn assign(eqs: &[Polynomial], v: Var, r: &Rational) -> Vec<Polynomial> {
    eqs.iter().map(|e| e.eval_var(v, r)).collect()
}

/// Rational solutions of a polynomial system by univariate root extraction
/// and resultant elimination. Unknowns absent from every equation stay free.
fn solve_system(eqs: Vec<Polynomial>, depth: usize) -> Solutions {
    let mut out = Solutions { points: Vec::new(), unsolved: Vec::new() };
    let Some(eqs) = clean(eqs) else {
        return out;
    };
    if eqs.is_empty() {
        out.points.push(Assignment::new());
        return out;
    }
    if depth > 8 {
        out.unsolved.push(format!("elimination depth exceeded: {}", show(&eqs)));
        return out;
    }

    // univariate equations first, z preferred, then lowest degree
    let uni = eqs
        .iter()
        .filter_map(|e| {
            let vs = e.vars();
            (vs.len() == 1).then(|| (vs[0], e))
        })
        .min_by_key(|(v, e)| (*v != Var::Z, e.degree_in(*v), v.index()));
    if let Some((v, e)) = uni {
        let u = UniPoly::from_poly(e, v).expect("univariate");
        let (mut roots, rest) = uni_rational_roots(&u);
        if rest.degree() > 0 {
            out.unsolved.push(format!(
                "no rational roots for {}=0 in {v} (irrational branch)",
                rest.monic().to_poly(v)
            ));
        }
        roots.dedup();
        for r in roots {
            let sub = solve_system(assign(&eqs, v, &r), depth + 1);
            out.unsolved.extend(sub.unsolved);
            for mut p in sub.points {
                p.insert(v, r.clone());
                out.points.push(p);
            }
        }
        return out;
    }

    let order = [Var::C, Var::B, Var::A, Var::Z, Var::D];
    let v = *order
        .iter()
        .find(|v| eqs.iter().any(|e| e.contains(**v)))
        .expect("non-constant equations have variables");
    let (with_v, without_v): (Vec<Polynomial>, Vec<Polynomial>) =
        eqs.iter().cloned().partition(|e| e.contains(v));

    if with_v.len() >= 2 {
        let mut g = Polynomial::zero();
        for e in &with_v {
            g = gcd(&g, e);
        }
        if g.contains(v) {
            let mut b1 = without_v.clone();
            b1.push(g.clone());
            let mut b2 = without_v.clone();
            b2.extend(with_v.iter().map(|e| e.div_exact(&g).expect("gcd divides")));
            for branch in [b1, b2] {
                let sub = solve_system(branch, depth + 1);
                out.points.extend(sub.points);
                out.unsolved.extend(sub.unsolved);
            }
            return out;
        }
    }

    let pivot_idx = (0..with_v.len()).min_by_key(|&i| (with_v[i].degree_in(v), with_v[i].num_terms())).unwrap();
    let pivot = with_v[pivot_idx].clone();
    let mut reduced = without_v.clone();
    for (i, e) in with_v.iter().enumerate() {
        if i != pivot_idx {
            reduced.push(resultant(&pivot, e, v));
        }
    }
    if with_v.len() == 1 && without_v.is_empty() {
        // one equation in several unknowns: solve for v only if it is linear
        // with a constant leading coefficient, leaving the others free
        let cs = pivot.coeffs_in(v);
        if cs.len() == 2 && cs[1].is_constant() {
            out.unsolved.push(format!("free parameters remain: {}=0 solved for {v} symbolically", show(&[pivot.clone()])));
        } else {
            out.unsolved.push(format!("positive-dimensional branch: {}", show(&[pivot.clone()])));
        }
        return out;
    }
    let sub = solve_system(reduced, depth + 1);
    out.unsolved.extend(sub.unsolved);
    for p in sub.points {
        let mut back = with_v.clone();
        for (var, val) in &p {
            back = assign(&back, *var, val);
        }
        let sub2 = solve_system(back, depth + 1);
        out.unsolved.extend(sub2.unsolved);
        for mut q in sub2.points {
            for (var, val) in &p {
                q.insert(*var, val.clone());
            }
            out.points.push(q);
        }
    }
    out
}

fn show(eqs: &[Polynomial]) -> String {
    eqs.iter().map(|e| format!("{e}")).collect::<Vec<_>>().join(", ")
}

/// Admissible families for `gamma`. The first parameter with a nonzero shift
/// is normalized to 0, which loses nothing since `t` may be translated.
/// `z0_hints` are tried when the ladder leaves branches unsolved.
pub fn solve(gamma: ShiftVector, z0_hints: &[Rational]) -> Result<SolveResult> {
    let poly = admissibility_polynomial(gamma)?;
    let comps = gamma.components();
    let pinned = (0..3).find(|&i| comps[i] != 0).expect("nonzero shift");
    let pin_var = PARAMS[pinned];
    let eqs: Vec<Polynomial> = poly.coefficients.iter().map(|c| c.eval_var(pin_var, &Rational::zero())).collect();

    let mut sols = solve_system(eqs.clone(), 0);
    if !sols.unsolved.is_empty() && !z0_hints.is_empty() {
        for z0 in z0_hints {
            let sub = solve_system(assign(&eqs, Var::Z, z0), 0);
            for mut p in sub.points {
                p.insert(Var::Z, z0.clone());
                if !sols.points.contains(&p) {
                    sols.points.push(p);
                }
            }
        }
    }

    let mut result = SolveResult { families: Vec::new(), unsolved: sols.unsolved };
    for p in sols.points {
        let Some(z0) = p.get(&Var::Z).cloned() else {
            result.unsolved.push("z0 left undetermined".into());
            continue;
        };
        if z0.is_zero() || z0.is_one() {
            continue;
        }
        let mut lf = Vec::new();
        for (i, v) in PARAMS.iter().enumerate() {
            let slope = Rational::from_integer(comps[i].into());
            let form = if i == pinned {
                LinearForm::new(Rational::zero(), slope)
            } else {
                match p.get(v) {
                    Some(val) => LinearForm::new(val.clone(), slope),
                    None => LinearForm::symbolic(Polynomial::var(*v), slope),
                }
            };
            lf.push(form);
        }
        let params = ParamVector { a: lf[0].clone(), b: lf[1].clone(), c: lf[2].clone() };
        if let Some(c) = params.c.rational_constant() {
            if params.c.slope.is_zero() && c.is_integer() && !c.is_positive() {
                continue;
            }
        }
        let family = AdmissibleFamily { shift: gamma, params, z0 };
        if poly.degenerate_on(&family) {
            continue;
        }
        if !poly.vanishes_on(&family) {
            result.unsolved.push(format!("candidate failed verification: {family}"));
            continue;
        }
        if !result.families.contains(&family) {
            result.families.push(family);
        }
    }
    result.families.sort_by(|x, y| family_key(x).cmp(&family_key(y)));
    result.unsolved.sort();
    result.unsolved.dedup();
    Ok(result)
}

fn family_key(f: &AdmissibleFamily) -> (Rational, String, String, String) {
    let c = |l: &LinearForm| l.rational_constant().map(|r| format!("{:>40}", crate::arith::rational::fmt_rational(&r))).unwrap_or_else(|| l.constant.to_string());
    (f.z0.clone(), c(&f.params.a), c(&f.params.b), c(&f.params.c))
}

fn smooth_235(n: &num_bigint::BigInt) -> bool {
    let mut n = n.abs();
    if n.is_zero() {
        return false;
    }
    for p in [2u32, 3, 5] {
        let p = num_bigint::BigInt::from(p);
        while (&n % &p).is_zero() {
            n /= &p;
        }
    }
    n.is_one()
}

/// `z0 = ±u/v` with `u, v ≤ height_bound` both {2,3,5}-smooth and `1 - z0`
/// also {2,3,5}-smooth, sorted by height then value.
pub fn candidate_z0(height_bound: u64) -> Vec<Rational> {
    let smooth: Vec<u64> = (1..=height_bound)
        .filter(|&n| smooth_235(&num_bigint::BigInt::from(n)))
        .collect();
    let mut out: Vec<Rational> = Vec::new();
    for &u in &smooth {
        for &v in &smooth {
            if u.gcd(&v) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let z = Rational::new((sign * u as i64).into(), (v as i64).into());
                let w = Rational::one() - &z;
                if w.is_zero() || !smooth_235(w.numer()) || !smooth_235(w.denom()) {
                    continue;
                }
                out.push(z);
            }
        }
    }
    out.sort_by(|x, y| {
        let h = |r: &Rational| r.numer().abs().max(r.denom().clone());
        h(x).cmp(&h(y)).then(x.cmp(y))
    });
    out.dedup();
    out
}

//! Gamma closed forms for admissible families, certified numerically at
//! several sample points, and their Clausen squares.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::admissibility::AdmissibleFamily;
use crate::arith::rational::{fmt_rational, is_nonpositive_integer};
use crate::arith::{factor_linear, LinearForm, Polynomial, Rational, RationalFunction, Var};
use crate::contiguity::shift_matrix_factored;
use crate::error::{Error, Result};
use crate::identity::{IdentityKind, IdentityRecord};
use crate::numerics::certify::{certify_exprs_filtered, Certification, Verdict};
use crate::numerics::Expr;

/// Sample points for certification.
pub fn default_points() -> Vec<Rational> {
    [(0, 1), (1, 3), (1, 2), (1, 1), (3, 2), (2, 1), (7, 3), (3, 1)]
        .iter()
        .map(|&(n, d)| Rational::new(n.into(), d.into()))
        .collect()
}

/// `F(β(t)) = C · R0^(t-τ) ∏ Γ(t+αᵢ)Γ(τ+δᵢ) / ∏ Γ(t+δᵢ)Γ(τ+αᵢ)` with
/// `C = F(β(τ))`; `τ = 0` and `C = 1` in the common case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaForm {
    #[serde(with = "crate::serde_rational")]
    pub r0: Rational,
    #[serde(with = "crate::serde_rational::vec")]
    pub alphas: Vec<Rational>,
    #[serde(with = "crate::serde_rational::vec")]
    pub deltas: Vec<Rational>,
    pub normalization: Normalization,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalization {
    /// Always `relative-to-t=<τ>`.
    pub tag: String,
    #[serde(with = "crate::serde_rational")]
    pub point: Rational,
    /// `F(β(τ))` when it differs from 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<Expr>,
}

impl GammaForm {
    /// The right-hand side as an expression in `t`.
    pub fn to_expr(&self) -> Expr {
        let tau = &self.normalization.point;
        let shift = |x: &Rational| Expr::linear(&Rational::one(), x);
        let mut num = Vec::new();
        let mut den = Vec::new();
        if let Some(c) = &self.normalization.constant {
            num.push(c.clone());
        }
        if !self.r0.is_one() {
            num.push(Expr::pow(Expr::Num(self.r0.clone()), Expr::linear(&Rational::one(), &-tau.clone())));
        }
        for a in &self.alphas {
            num.push(Expr::gamma(shift(a)));
            den.push(Expr::gamma(Expr::Num(tau + a)));
        }
        for d in &self.deltas {
            den.push(Expr::gamma(shift(d)));
            num.push(Expr::gamma(Expr::Num(tau + d)));
        }
        let n = Expr::product(num);
        if den.is_empty() {
            n
        } else {
            n / Expr::product(den)
        }
    }

    /// Ratio `R0 ∏(t+αᵢ)/∏(t+δᵢ)`.
    pub fn ratio(&self) -> RationalFunction {
        let lin = |x: &Rational| Polynomial::linear(Var::T, x.clone());
        let num = self.alphas.iter().fold(Polynomial::constant(self.r0.clone()), |acc, a| &acc * &lin(a));
        let den = self.deltas.iter().fold(Polynomial::one(), |acc, d| &acc * &lin(d));
        RationalFunction::new(num, den).expect("monic linear factors")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaEvaluation {
    pub family: AdmissibleFamily,
    pub form: GammaForm,
    pub lhs: Expr,
    pub rhs: Expr,
    pub certification: Certification,
}

impl GammaEvaluation {
    pub fn identity(&self, id: impl Into<String>) -> IdentityRecord {
        let mut rec = IdentityRecord::new(id, IdentityKind::GammaEval, &self.lhs, &self.rhs)
            .with_provenance(format!("admissible family {} for shift {}", self.family, self.family.shift))
            .with_provenance(format!(
                "functional ratio {}",
                self.form.ratio()
            ))
            .with_provenance(format!("normalization {}", self.form.normalization.tag));
        rec.certification = Some(self.certification.clone());
        rec
    }

    /// Text rendering in the usual notation.
    pub fn render(&self) -> String {
        let p = &self.family.params;
        let mut s = format!(
            "2F1({}, {}; {} | {}) = ",
            p.a,
            p.b,
            p.c,
            fmt_rational(&self.family.z0)
        );
        let tau = &self.form.normalization.point;
        if let Some(c) = &self.form.normalization.constant {
            s.push_str(&format!("[{c}] "));
        }
        if !self.form.r0.is_one() {
            if tau.is_zero() {
                s.push_str(&format!("({})^t ", fmt_rational(&self.form.r0)));
            } else {
                s.push_str(&format!("({})^(t-{}) ", fmt_rational(&self.form.r0), fmt_rational(tau)));
            }
        }
        let g = |x: &Rational, with_t: bool| {
            if with_t {
                format!("Γ({})", LinearForm::new(x.clone(), Rational::one()))
            } else {
                format!("Γ({})", fmt_rational(x))
            }
        };
        let num: Vec<String> = self
            .form
            .alphas
            .iter()
            .map(|a| g(a, true))
            .chain(self.form.deltas.iter().map(|d| g(&(tau + d), false)))
            .collect();
        let den: Vec<String> = self
            .form
            .deltas
            .iter()
            .map(|d| g(d, true))
            .chain(self.form.alphas.iter().map(|a| g(&(tau + a), false)))
            .collect();
        if num.is_empty() {
            s.push('1');
        } else {
            s.push_str(&num.join(""));
        }
        if !den.is_empty() {
            s.push_str(&format!(" / ({})", den.join("")));
        }
        s
    }
}

fn substitute_family(f: &RationalFunction, family: &AdmissibleFamily) -> Result<RationalFunction> {
    let mut bind: Vec<(Var, RationalFunction)> =
        family.params.bindings().into_iter().map(|(v, p)| (v, RationalFunction::from_poly(p))).collect();
    bind.push((Var::Z, RationalFunction::constant(family.z0.clone())));
    f.substitute(&bind)
}

/// `R_γ(β₀ + tγ, z₀)`, the ratio `F(β(t+1)) / F(β(t))`.
pub fn functional_ratio(family: &AdmissibleFamily) -> Result<RationalFunction> {
    if family.shift.is_zero() {
        return Ok(RationalFunction::one());
    }
    let m = shift_matrix_factored(family.shift);
    let q = substitute_family(&m.entry(0, 1), family)
        .map_err(|_| Error::NotAdmissible(format!("shift matrix is singular along {family}")))?;
    if !q.is_zero() {
        return Err(Error::NotAdmissible(format!("derivative coefficient {q} along {family}")));
    }
    substitute_family(&m.entry(0, 0), family)
}

/// Hypergeometric side `2F1(a(t), b(t); c(t) | z₀)`.
pub fn series_expr(family: &AdmissibleFamily) -> Result<Expr> {
    let p = &family.params;
    Ok(Expr::hyp(
        vec![Expr::from_linear(&p.a)?, Expr::from_linear(&p.b)?],
        vec![Expr::from_linear(&p.c)?],
        Expr::Num(family.z0.clone()),
    ))
}

/// Smallest integer `τ >= 0` where the series is continuous in `t` and every
/// gamma factor is finite.
fn normalization_point(family: &AdmissibleFamily, alphas: &[Rational], deltas: &[Rational]) -> Result<Rational> {
    for k in 0..64i64 {
        let tau = Rational::from_integer(k.into());
        let ok_gamma = alphas.iter().chain(deltas).all(|x| !is_nonpositive_integer(&(&tau + x)));
        let base = family.params.at(&tau).ok_or_else(|| Error::Eval("symbolic family".into()))?;
        // a non-positive integer lower parameter makes F discontinuous in t there
        let ok_series = !is_nonpositive_integer(&base[2]);
        if ok_gamma && ok_series {
            return Ok(tau);
        }
    }
    Err(Error::Eval(format!("no normalization point for {family}")))
}

fn lower_pole(family: &AdmissibleFamily, t: &Rational) -> Option<String> {
    let c = family.params.c.at_rational(t)?;
    is_nonpositive_integer(&c).then(|| format!("lower parameter {} is a non-positive integer", fmt_rational(&c)))
}

pub fn synthesize(family: &AdmissibleFamily, prec: usize) -> Result<GammaEvaluation> {
    synthesize_at(family, prec, &default_points())
}

pub fn synthesize_at(family: &AdmissibleFamily, prec: usize, points: &[Rational]) -> Result<GammaEvaluation> {
    let ratio = functional_ratio(family)?;
    let fl = factor_linear(&ratio, Var::T)?;
    let tau = normalization_point(family, &fl.alphas, &fl.deltas)?;
    let lhs = series_expr(family)?;
    let base = family.params.at(&tau).expect("checked in normalization_point");
    let at_tau = Expr::hyp(
        vec![Expr::Num(base[0].clone()), Expr::Num(base[1].clone())],
        vec![Expr::Num(base[2].clone())],
        Expr::Num(family.z0.clone()),
    );
    // a terminating value folds into an exact constant
    let constant = match crate::numerics::hyper::termination_index(&base[..2]) {
        Some(n) => {
            let v = crate::numerics::hyper::partial_sum(&base[..2], &base[2..], &family.z0, n);
            (!v.is_one()).then_some(Expr::Num(v))
        }
        None => Some(at_tau),
    };
    let form = GammaForm {
        r0: fl.constant.clone(),
        alphas: fl.alphas.clone(),
        deltas: fl.deltas.clone(),
        normalization: Normalization { tag: format!("relative-to-t={}", fmt_rational(&tau)), point: tau, constant },
    };
    let rhs = form.to_expr();
    let certification = certify_exprs_filtered(&lhs, &rhs, points, prec, |t| lower_pole(family, t));
    if certification.verdict == Verdict::NoEvaluablePoints {
        return Err(Error::SeriesDiverges);
    }
    Ok(GammaEvaluation { family: family.clone(), form, lhs, rhs, certification })
}

/// `2F1(a, b; a+b+1/2 | z)² = 3F2(2a, 2b, a+b; 2a+2b, a+b+1/2 | z)`.
pub fn clausen_square(e: &GammaEvaluation, prec: usize, points: &[Rational]) -> Result<IdentityRecord> {
    let p = &e.family.params;
    let half = Rational::new(1.into(), 2.into());
    let diff_slope = &p.c.slope - &p.a.slope - &p.b.slope;
    let diff_const = &(&p.c.constant - &p.a.constant) - &p.b.constant;
    if !diff_slope.is_zero() || diff_const != Polynomial::constant(half.clone()) {
        let shown = LinearForm::symbolic(diff_const, diff_slope);
        return Err(Error::ClausenShapeMismatch(shown.to_string()));
    }
    let two = Rational::from_integer(2.into());
    let scale = |l: &LinearForm, k: &Rational| LinearForm::symbolic(l.constant.scale(k), &l.slope * k);
    let sum = |x: &LinearForm, y: &LinearForm| LinearForm::symbolic(&x.constant + &y.constant, &x.slope + &y.slope);
    let ab = sum(&p.a, &p.b);
    let upper = [scale(&p.a, &two), scale(&p.b, &two), ab.clone()];
    let lower = [scale(&ab, &two), p.c.clone()];
    let lhs = Expr::hyp(
        upper.iter().map(Expr::from_linear).collect::<Result<_>>()?,
        lower.iter().map(Expr::from_linear).collect::<Result<_>>()?,
        Expr::Num(e.family.z0.clone()),
    );
    let rhs = Expr::pow(e.rhs.clone(), Expr::int(2));
    let mut rec = IdentityRecord::new("clausen-square", IdentityKind::GammaEval, &lhs, &rhs)
        .with_provenance(format!("Clausen square of {}", e.render()));
    rec.certification = Some(certify_exprs_filtered(&lhs, &rhs, points, prec, |t| lower_pole(&e.family, t)));
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::contiguity::ShiftVector;

    fn fam(g: &str, base: [Rational; 3], z0: Rational) -> AdmissibleFamily {
        AdmissibleFamily::new(ShiftVector::parse(g).unwrap(), base, z0)
    }

    #[test]
    fn first_family_ratio() {
        let f = fam("2,2,1", [int(0), rat(1, 3), rat(5, 6)], rat(-1, 8));
        let r = functional_ratio(&f).unwrap();
        let want = RationalFunction::new(
            Polynomial::linear(Var::T, rat(5, 6)).scale(&rat(16, 27)),
            Polynomial::linear(Var::T, rat(2, 3)),
        )
        .unwrap();
        assert_eq!(r, want);
    }

    #[test]
    fn zero_shift_ratio_is_one() {
        let f = fam("0,0,0", [int(0), int(1), int(2)], rat(1, 2));
        assert!(functional_ratio(&f).unwrap().is_one());
    }

    #[test]
    fn non_admissible_is_rejected() {
        let f = fam("2,2,1", [int(0), rat(1, 3), rat(5, 6)], rat(-1, 7));
        assert!(matches!(functional_ratio(&f), Err(Error::NotAdmissible(_))));
    }
}

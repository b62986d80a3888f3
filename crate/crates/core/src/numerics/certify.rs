//! Multi-point numeric certification of closed-form identities.

use serde::{Deserialize, Serialize};

use super::bigfloat::{decimal_digits, ten_to_minus, BigFloat};
use super::expr::Expr;
use crate::arith::Rational;
use crate::error::Error;
use crate::identity::IdentityRecord;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum PointStatus {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointResult {
    #[serde(with = "crate::serde_rational")]
    pub t: Rational,
    #[serde(flatten)]
    pub status: PointStatus,
    /// `|lhs - rhs| / max(|lhs|, |rhs|)` in scientific notation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    NumericallyCertified,
    Failed,
    /// Integer points agree but some non-integer point does not.
    PeriodicFactorSuspected,
    NoEvaluablePoints,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    pub precision: usize,
    pub tolerance_digits: usize,
    pub verdict: Verdict,
    pub points: Vec<PointResult>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub worst: Option<Rational>,
}

impl Certification {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::NumericallyCertified
    }

    pub fn evaluated(&self) -> usize {
        self.points.iter().filter(|p| !matches!(p.status, PointStatus::Skipped(_))).count()
    }
}

mod opt_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::arith::rational::{fmt_rational, parse_rational};
    use crate::arith::Rational;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&fmt_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| parse_rational(&s).map_err(serde::de::Error::custom)).transpose()
    }
}

/// Tolerance in decimal digits for a precision in bits.
pub fn tolerance_digits(prec: usize) -> usize {
    decimal_digits(prec).saturating_sub(10)
}

fn skippable(e: &Error) -> bool {
    matches!(
        e,
        Error::Divergent | Error::PoleAtNonPositiveInteger(_) | Error::LowerParamPole(_) | Error::ZeroDenominator
    )
}

pub fn certify_exprs(lhs: &Expr, rhs: &Expr, points: &[Rational], prec: usize) -> Certification {
    certify_exprs_filtered(lhs, rhs, points, prec, |_| None)
}

/// As [`certify_exprs`], skipping points for which `skip` gives a reason.
pub fn certify_exprs_filtered(
    lhs: &Expr,
    rhs: &Expr,
    points: &[Rational],
    prec: usize,
    skip: impl Fn(&Rational) -> Option<String>,
) -> Certification {
    let digits = tolerance_digits(prec);
    let tol = ten_to_minus(digits, prec);
    let mut results = Vec::new();
    let mut worst: Option<(Rational, BigFloat)> = None;
    for t in points {
        if let Some(reason) = skip(t) {
            results.push(PointResult { t: t.clone(), status: PointStatus::Skipped(reason), residual: None, lhs: None, rhs: None });
            continue;
        }
        let (l, r) = match (lhs.eval(t, prec), rhs.eval(t, prec)) {
            (Ok(l), Ok(r)) => (l, r),
            (Err(e), _) | (_, Err(e)) => {
                let status = if skippable(&e) { PointStatus::Skipped(e.to_string()) } else { PointStatus::Fail };
                results.push(PointResult { t: t.clone(), status, residual: Some(e.to_string()).filter(|_| !skippable(&e)), lhs: None, rhs: None });
                continue;
            }
        };
        let res = l.rel_diff(&r);
        let ok = res <= tol;
        if worst.as_ref().map_or(true, |(_, w)| res > *w) {
            worst = Some((t.clone(), res.clone()));
        }
        results.push(PointResult {
            t: t.clone(),
            status: if ok { PointStatus::Pass } else { PointStatus::Fail },
            residual: Some(res.to_scientific(3)),
            lhs: Some(l.to_scientific(30)),
            rhs: Some(r.to_scientific(30)),
        });
    }
    let verdict = verdict(&results);
    Certification { precision: prec, tolerance_digits: digits, verdict, points: results, worst: worst.map(|(t, _)| t) }
}

fn verdict(results: &[PointResult]) -> Verdict {
    let evaluated: Vec<&PointResult> = results.iter().filter(|p| !matches!(p.status, PointStatus::Skipped(_))).collect();
    if evaluated.is_empty() {
        return Verdict::NoEvaluablePoints;
    }
    let failed: Vec<&&PointResult> = evaluated.iter().filter(|p| p.status == PointStatus::Fail).collect();
    if failed.is_empty() {
        return Verdict::NumericallyCertified;
    }
    let integer_pass = evaluated.iter().any(|p| p.t.is_integer() && p.status == PointStatus::Pass);
    if integer_pass && failed.iter().all(|p| !p.t.is_integer()) {
        Verdict::PeriodicFactorSuspected
    } else {
        Verdict::Failed
    }
}

/// Certifies an identity whose sides are closed-form expressions.
pub fn certify(identity: &IdentityRecord, points: &[Rational], prec: usize) -> crate::Result<Certification> {
    let lhs = identity.lhs_expr()?;
    let rhs = identity.rhs_expr()?;
    Ok(certify_exprs(&lhs, &rhs, points, prec))
}

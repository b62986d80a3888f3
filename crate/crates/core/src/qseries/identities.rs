//! Built-in q-identities and their coefficientwise verification.

use serde::{Deserialize, Serialize};

use super::recipe::{Bindings, Side, SYMBOLIC};
use super::series::QSeries;
use crate::error::{Error, Result};
use crate::identity::{IdentityKind, IdentityRecord};

pub const DEFAULT_ORDER: usize = 50;

/// A named `lhs = rhs` statement in the q-series grammar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QIdentity {
    pub name: String,
    pub lhs: Side,
    pub rhs: Side,
}

impl QIdentity {
    pub fn parse(name: &str, lhs: &str, rhs: &str) -> Result<QIdentity> {
        Ok(QIdentity { name: name.to_string(), lhs: Side::parse(lhs)?, rhs: Side::parse(rhs)? })
    }

    pub fn from_record(rec: &IdentityRecord) -> Result<QIdentity> {
        if rec.kind != IdentityKind::QIdentity {
            return Err(Error::Eval(format!("{} is not a q-identity", rec.id)));
        }
        QIdentity::parse(&rec.id, &rec.lhs, &rec.rhs)
    }

    pub fn record(&self) -> IdentityRecord {
        IdentityRecord::new(self.name.clone(), IdentityKind::QIdentity, &self.lhs, &self.rhs)
    }

    pub fn verify(&self, order: usize) -> Result<QCheck> {
        self.verify_with(order, &SYMBOLIC)
    }

    pub fn verify_with(&self, order: usize, bind: &Bindings) -> Result<QCheck> {
        verify_q_identity(&self.lhs, &self.rhs, order, bind)
    }
}

/// Result of a coefficientwise comparison to `O(q^order)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QCheck {
    pub holds: bool,
    pub order: usize,
    /// Least power of `q` where the sides differ.
    pub discrepancy_order: Option<usize>,
    /// `lhs - rhs` at that power.
    pub difference: Option<String>,
}

pub fn compare(lhs: &QSeries, rhs: &QSeries) -> QCheck {
    let order = lhs.order();
    match lhs.first_difference(rhs) {
        None => QCheck { holds: true, order, discrepancy_order: None, difference: None },
        Some((n, d)) => {
            QCheck { holds: false, order, discrepancy_order: Some(n), difference: Some(d.to_string()) }
        }
    }
}

pub fn verify_q_identity(lhs: &Side, rhs: &Side, order: usize, bind: &Bindings) -> Result<QCheck> {
    Ok(compare(&lhs.eval(order, bind)?, &rhs.eval(order, bind)?))
}

struct Builtin {
    name: &'static str,
    lhs: &'static str,
    rhs: &'static str,
    /// `(from, to)` applied to the right side: one altered exponent.
    mutation: (&'static str, &'static str),
    source: &'static str,
    /// Product side as displayed in the source when it differs from `rhs`.
    printed: Option<&'static str>,
}

const BUILTINS: [Builtin; 6] = [
    Builtin {
        name: "q-chern",
        lhs: "sum(k) (-1)^k * qbinom-exp(k) * a^k * poch(q^2/a; q^2; k) * poch(a; q; k) / poch(q^3; q^3; k) / poch(a^2*q; q^2; k)",
        rhs: "poch(a*q; q^2; inf) * poch(a^3*q^3; q^6; inf) / poch(a^2*q; q^2; inf) / poch(q^3; q^6; inf)",
        mutation: ("poch(q^3; q^6; inf)", "poch(q^2; q^6; inf)"),
        source: "Chern's identity",
        printed: None,
    },
    Builtin {
        name: "q-chern-quadratic",
        lhs: "sum(k) q^(k^2) * a^k * poch(q/a; q; k) * poch(a^2; q; k) * poch(-a*q^(2*k); q; 1) / poch(q^3; q^3; k) / poch(a^3*q^2; q^3; k)",
        rhs: "poch(-a; q; inf) * poch(a^2*q; q^2; inf) * poch(q^2; q^3; inf) / poch(a^3*q^2; q^3; inf)",
        mutation: ("poch(q^2; q^3; inf)", "poch(q; q^3; inf)"),
        source: "companion with (1 + a q^2k) q^(k^2)",
        printed: None,
    },
    Builtin {
        name: "q-chern-c",
        lhs: "sum(k) (-1)^k * qbinom-exp(k) * a^k * poch(c*q^(5*k); q; 1) * poch(q^2/a; q^2; k) * poch(c; q^2; k) * poch(a; q; k) * poch(c*q/a^2; q^3; k) * poch(a*c*q; q^6; k) / poch(c; q; 1) / poch(q^3; q^3; k) / poch(a*c*q; q^3; k) / poch(a^2*q; q^2; k) / poch(c*q^2/a; q^4; k) / poch(c*q^4/a; q^4; k)",
        rhs: "poch(c*q^2; q^2; inf) * poch(a*q; q^2; inf) * poch(c*q^4/a^2; q^6; inf) * poch(a^3*q^3; q^6; inf) / poch(c*q^2/a; q^2; inf) / poch(a^2*q; q^2; inf) / poch(q^3; q^6; inf) / poch(a*c*q^4; q^6; inf)",
        mutation: ("poch(a*c*q^4; q^6; inf)", "poch(a*c*q^2; q^6; inf)"),
        source: "very-well-poised extension with c, corrected product side",
        printed: None,
    },
    Builtin {
        name: "q-quartic-b",
        lhs: "sum(k) (-1)^k * q^(k^2+2*k) * poch(q; q^2; k) * poch(b; q^4; k) / poch(q^4; q^4; k) / poch(b*q^3; q^6; k)",
        rhs: "poch(b; q^4; inf) * poch(q^3; q^6; inf) * poch(q^12; q^12; inf) / poch(q^4; q^4; inf) / poch(b*q^3; q^6; inf) / poch(b; q^12; inf)",
        mutation: ("poch(q^12; q^12; inf)", "poch(q^11; q^12; inf)"),
        source: "a=0 specialization with parameter b",
        printed: None,
    },
    Builtin {
        name: "q-bd-quadratic",
        lhs: "sum(k) qbinom-exp(k) * d^k * poch(b; q; k) * poch(q/b; q; k) / poch(q^2; q^2; k) / poch(q*d; q; k)",
        rhs: "poch(q*b*d; q^2; inf) * poch(q^2*d/b; q^2; inf) / poch(q*d; q; inf)",
        mutation: ("poch(q^2*d/b; q^2; inf)", "poch(q^3*d/b; q^2; inf)"),
        source: "a=0, m to infinity specialization; q-analogue of Bailey's sum",
        printed: Some("poch(q*b*d; q^2; inf) * poch(q^2*b/d; q^2; inf) / poch(q*d; q; inf)"),
    },
    Builtin {
        name: "q-rahman",
        lhs: "sum(k) qbinom-exp(k) * poch(b; q; k) * poch(d; q; k) / poch(q; q; k) / poch(q*b*d; q^2; k)",
        rhs: "poch(q*b; q^2; inf) * poch(q*d; q^2; inf) / poch(q; q^2; inf) / poch(q*b*d; q^2; inf)",
        mutation: ("poch(q*d; q^2; inf)", "poch(q^2*d; q^2; inf)"),
        source: "a=0 specialization of Rahman's sum; q-analogue of Gauss's second sum",
        printed: Some("poch(q*b; q^2; inf) * poch(q*d; q^2; inf) / poch(q; q; inf) / poch(q*b*d; q; inf)"),
    },
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|b| b.name).collect()
}

fn find(name: &str) -> Result<&'static Builtin> {
    BUILTINS.iter().find(|b| b.name == name).ok_or_else(|| Error::UnknownIdentity(name.to_string()))
}

pub fn builtin(name: &str) -> Result<QIdentity> {
    let b = find(name)?;
    QIdentity::parse(b.name, b.lhs, b.rhs)
}

/// Literature pointer for a built-in identity.
pub fn builtin_source(name: &str) -> Result<&'static str> {
    Ok(find(name)?.source)
}

/// The built-in with the product side exactly as displayed in its source;
/// `None` when the shipped form is that display.
pub fn as_printed(name: &str) -> Result<Option<QIdentity>> {
    let b = find(name)?;
    b.printed.map(|rhs| QIdentity::parse(&format!("{}-as-printed", b.name), b.lhs, rhs)).transpose()
}

/// The built-in with one exponent on its product side altered.
pub fn mutated(name: &str) -> Result<QIdentity> {
    let b = find(name)?;
    let (from, to) = b.mutation;
    assert!(b.rhs.contains(from), "mutation target missing in {}", b.name);
    QIdentity::parse(&format!("{}-mutated", b.name), b.lhs, &b.rhs.replacen(from, to, 1))
}

/// Outcome of the telescoping check for the Chern summand.
#[derive(Clone, Debug)]
pub struct TelescopingCheck {
    /// `Σₖ Dₖ` to `O(q^order)`, which should vanish.
    pub total: QSeries,
    /// Valuations of the partial sums `G_K = Σ_{k<K} Dₖ`, `K = 1, 2, ...`.
    pub partial_valuations: Vec<Option<usize>>,
    /// Least `q`-power of the summands `Dₖ` from index `K` on.
    pub tail_orders: Vec<i64>,
}

impl TelescopingCheck {
    /// The relation telescopes: the total vanishes and every boundary term
    /// `G_K = -Σ_{k>=K} Dₖ` sits at or above the order of the tail.
    pub fn holds(&self) -> bool {
        self.total.is_zero()
            && self.partial_valuations.iter().zip(&self.tail_orders).all(|(v, &t)| v.map_or(true, |v| v as i64 >= t))
    }
}

/// `(1-a²q)(1-a⁶q³)F̃ₖ(aq) - (1-a⁴q)(1-a⁴q³)F̃ₖ(a)` summed over `k`, where
/// `F̃ₖ(a) = Fₖ(a²)` is the Chern summand written in `A = a²`.
pub fn chern_telescoping(order: usize) -> Result<TelescopingCheck> {
    let f = builtin("q-chern")?.lhs.substitute('a', 2, 0)?;
    let g = f.substitute('a', 1, 1)?;
    let coef = |s: &str| -> Result<QSeries> { Side::parse(s)?.eval(order, &SYMBOLIC) };
    let left = coef("poch(a^2*q; q; 1) * poch(a^6*q^3; q; 1)")?;
    let right = coef("poch(a^4*q; q; 1) * poch(a^4*q^3; q; 1)")?;
    let (fa, ga) = (f.terms(order, &SYMBOLIC)?, g.terms(order, &SYMBOLIC)?);
    let n = fa.len().max(ga.len());
    let zero = QSeries::zero(order);
    let mut total = QSeries::zero(order);
    let mut partial_valuations = Vec::with_capacity(n);
    let mut tail_orders = Vec::with_capacity(n);
    for k in 0..n {
        let d = left.mul(ga.get(k).unwrap_or(&zero)).sub(&right.mul(fa.get(k).unwrap_or(&zero)));
        total = total.add(&d);
        partial_valuations.push(total.valuation());
        let next = (k + 1) as i64;
        tail_orders.push(f.prefactor.q.eval(next)?.min(g.prefactor.q.eval(next)?));
    }
    Ok(TelescopingCheck { total, partial_valuations, tail_orders })
}

/// Coefficient difference rendered for reports.
pub fn describe(check: &QCheck) -> String {
    match (&check.discrepancy_order, &check.difference) {
        (Some(n), Some(d)) => format!("differs at q^{n}: lhs - rhs = {d}"),
        _ => format!("agrees to O(q^{})", check.order),
    }
}

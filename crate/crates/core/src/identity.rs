//! Identity records exchanged between the pipeline stages, the corpus and
//! the command line.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::certify::Certification;
use crate::numerics::Expr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    /// `lhs` and `rhs` are closed-form expressions in `t`.
    GammaEval,
    /// `lhs` is the summand or series, `rhs` the recurrence operator.
    Recurrence,
    /// Both sides in the q-series grammar.
    QIdentity,
    /// Closed-form expressions without `t`.
    NumericConstant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub id: String,
    pub kind: IdentityKind,
    pub lhs: String,
    pub rhs: String,
    /// Pipeline steps that produced the statement.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certification: Option<Certification>,
}

impl IdentityRecord {
    pub fn new(id: impl Into<String>, kind: IdentityKind, lhs: impl ToString, rhs: impl ToString) -> Self {
        IdentityRecord {
            id: id.into(),
            kind,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            provenance: Vec::new(),
            certification: None,
        }
    }

    pub fn with_provenance(mut self, step: impl Into<String>) -> Self {
        self.provenance.push(step.into());
        self
    }

    fn expr_side(&self, side: &str) -> Result<Expr> {
        match self.kind {
            IdentityKind::GammaEval | IdentityKind::NumericConstant => Expr::parse(side),
            _ => Err(Error::Eval(format!("{} sides are not closed-form expressions", self.id))),
        }
    }

    pub fn lhs_expr(&self) -> Result<Expr> {
        self.expr_side(&self.lhs)
    }

    pub fn rhs_expr(&self) -> Result<Expr> {
        self.expr_side(&self.rhs)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

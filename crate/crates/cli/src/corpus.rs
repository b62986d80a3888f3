//! The shipped identity corpus and the checks run against each entry.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use gammaeval::arith::rational::parse_rational;
use gammaeval::arith::{parse_polynomial, Rational, Var};
use gammaeval::identity::{IdentityKind, IdentityRecord};
use gammaeval::numerics::certify::{certify, tolerance_digits, Certification};
use gammaeval::numerics::BigFloat;
use gammaeval::qseries::identities::describe as describe_check;
use gammaeval::qseries::{QCheck, QIdentity};
use gammaeval::recurrence::Recurrence;
use gammaeval::synthesis::default_points;
use gammaeval::telescoping::{numeric_residual, zeilberger, HyperTermFamily};
use gammaeval::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryStatus {
    /// Checked and expected to hold.
    Certified,
    /// Produced by the pipeline rather than copied from a source; expected to hold.
    Derived,
    /// Recorded as displayed in its source; known not to hold.
    Failed,
}

impl EntryStatus {
    pub fn expects_pass(self) -> bool {
        self != EntryStatus::Failed
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EntryStatus::Certified => "certified",
            EntryStatus::Derived => "derived",
            EntryStatus::Failed => "failed",
        }
    }
}

/// An identity record with the metadata kept in the corpus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    #[serde(flatten)]
    pub record: IdentityRecord,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, Value>,
    #[serde(default)]
    pub source: String,
    pub status: EntryStatus,
}

impl CorpusEntry {
    pub fn name(&self) -> &str {
        &self.record.id
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<CorpusEntry> {
        Ok(serde_json::from_str(s)?)
    }

    fn param_str(&self, key: &str) -> Result<&str> {
        self.params
            .get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Json(format!("{}: missing string parameter {key:?}", self.name())))
    }

    fn param_list(&self, key: &str) -> Result<Option<Vec<String>>> {
        match self.params.get(key) {
            None => Ok(None),
            Some(Value::Array(xs)) => xs
                .iter()
                .map(|x| {
                    x.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| Error::Json(format!("{}: {key} must hold strings", self.name())))
                })
                .collect::<Result<Vec<_>>>()
                .map(Some),
            Some(_) => Err(Error::Json(format!("{}: {key} must be an array", self.name()))),
        }
    }

    /// Sample points from `params.points`, if present.
    pub fn points(&self) -> Result<Option<Vec<Rational>>> {
        self.param_list("points")?.map(|xs| xs.iter().map(|x| parse_rational(x)).collect()).transpose()
    }

}

macro_rules! shipped {
    ($($name:literal),* $(,)?) => {
        const SHIPPED: &[(&str, &str)] = &[$(($name, include_str!(concat!("../corpus/", $name, ".json")))),*];
    };
}

shipped!(
    "clausen-eb1",
    "clausen-eb1-eighth",
    "cm-64",
    "cm-80",
    "ebisu-132-eighth",
    "ebisu-132-quarter",
    "ebisu-132-quarter-duplication",
    "ebisu-221-1",
    "ebisu-221-2",
    "fifth-1",
    "fifth-2",
    "four-fifths-1",
    "four-fifths-2",
    "g-constant",
    "g-recurrence",
    "printed-g-recurrence",
    "printed-q-bd-quadratic",
    "printed-q-rahman",
    "q-bd-quadratic",
    "q-chern",
    "q-chern-c",
    "q-chern-quadratic",
    "q-quartic-b",
    "q-rahman",
    "z2-recurrence-1",
    "z2-recurrence-2",
);

/// File names of the shipped entries, without extension.
pub fn shipped_names() -> Vec<&'static str> {
    SHIPPED.iter().map(|(n, _)| *n).collect()
}

/// All shipped entries sorted by name.
pub fn load() -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::with_capacity(SHIPPED.len());
    for (name, text) in SHIPPED {
        let e = CorpusEntry::from_json(text).map_err(|err| Error::Json(format!("corpus entry {name}: {err}")))?;
        if e.name() != *name {
            return Err(Error::Json(format!("corpus file {name} holds entry {}", e.name())));
        }
        out.push(e);
    }
    out.sort_by(|a, b| a.name().cmp(b.name()));
    Ok(out)
}

pub fn get(name: &str) -> Result<CorpusEntry> {
    load()?.into_iter().find(|e| e.name() == name).ok_or_else(|| Error::UnknownIdentity(name.to_string()))
}

/// Entries whose name matches a shell-style pattern.
pub fn select(pattern: &str) -> Result<Vec<CorpusEntry>> {
    let pat = glob::Pattern::new(pattern)
        .map_err(|e| Error::Parse { offset: e.pos, message: format!("bad pattern {pattern:?}: {}", e.msg) })?;
    Ok(load()?.into_iter().filter(|e| pat.matches(e.name())).collect())
}

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub prec: usize,
    pub order: usize,
}

/// Result of checking one entry.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryCheck {
    pub name: String,
    pub kind: IdentityKind,
    pub passed: bool,
    /// Largest relative residual for numeric checks, first differing power
    /// of `q` for q-series checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst: Option<String>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certification: Option<Certification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qcheck: Option<QCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residuals: Vec<(String, String)>,
}

/// Checks an entry at its own sample points, if any.
pub fn check(entry: &CorpusEntry, settings: Settings) -> Result<EntryCheck> {
    check_with(entry, settings, None)
}

/// As [`check`], with explicit sample points overriding the entry's own.
pub fn check_with(entry: &CorpusEntry, settings: Settings, points: Option<&[Rational]>) -> Result<EntryCheck> {
    let base = EntryCheck {
        name: entry.name().to_string(),
        kind: entry.record.kind,
        passed: false,
        worst: None,
        detail: String::new(),
        certification: None,
        qcheck: None,
        residuals: Vec::new(),
    };
    match entry.record.kind {
        IdentityKind::GammaEval | IdentityKind::NumericConstant => {
            let pts = match points {
                Some(p) => p.to_vec(),
                None => entry.points()?.unwrap_or_else(|| default_points_for(entry.record.kind)),
            };
            let c = certify(&entry.record, &pts, settings.prec)?;
            Ok(EntryCheck {
                passed: c.passed(),
                worst: c.worst.as_ref().and_then(|t| {
                    c.points.iter().find(|p| &p.t == t).and_then(|p| p.residual.clone())
                }),
                detail: format!("{:?} at {} of {} points", c.verdict, c.evaluated(), c.points.len()),
                certification: Some(c),
                ..base
            })
        }
        IdentityKind::QIdentity => {
            let id = QIdentity::from_record(&entry.record)?;
            let c = id.verify(settings.order)?;
            Ok(EntryCheck {
                passed: c.holds,
                worst: c.discrepancy_order.map(|n| format!("q^{n}")),
                detail: describe_check(&c),
                qcheck: Some(c),
                ..base
            })
        }
        IdentityKind::Recurrence => check_recurrence(entry, settings, points, base),
    }
}

fn default_points_for(kind: IdentityKind) -> Vec<Rational> {
    match kind {
        IdentityKind::NumericConstant => vec![Rational::from_integer(0.into())],
        _ => default_points(),
    }
}

/// The term family and stored operator of a recurrence entry.
pub fn recurrence_parts(entry: &CorpusEntry) -> Result<(HyperTermFamily, Recurrence)> {
    let term = HyperTermFamily::parse(entry.param_str("upper")?, entry.param_str("lower")?, entry.param_str("z")?)?;
    let coeffs = entry
        .param_list("coefficients")?
        .ok_or_else(|| Error::Json(format!("{}: missing coefficients", entry.name())))?;
    let lowest = entry.params.get("lowest_shift").and_then(Value::as_i64).unwrap_or(0);
    // re-index so the first coefficient multiplies F(t)
    let h = Rational::from_integer((-lowest).into());
    let coefficients = coeffs.iter().map(|c| Ok(parse_polynomial(c)?.shift(Var::T, &h))).collect::<Result<Vec<_>>>()?;
    Ok((term, Recurrence { coefficients, inhomogeneity: None, certificate: None }))
}

fn check_recurrence(
    entry: &CorpusEntry,
    settings: Settings,
    points: Option<&[Rational]>,
    base: EntryCheck,
) -> Result<EntryCheck> {
    let (term, stored) = recurrence_parts(entry)?;
    let pts = match points {
        Some(p) => p.to_vec(),
        None => entry.points()?.unwrap_or_else(default_points),
    };
    let tol = tolerance_digits(settings.prec) as f64;
    let mut worst: Option<BigFloat> = None;
    let mut residuals = Vec::new();
    let mut ok = true;
    for t in &pts {
        let r = numeric_residual(&term, &stored, t, settings.prec)?;
        ok &= r.is_zero() || r.log10_abs() < -tol;
        residuals.push((gammaeval::arith::rational::fmt_rational(t), r.to_scientific(3)));
        if worst.as_ref().map_or(true, |w| r > *w) {
            worst = Some(r);
        }
    }
    let derived = zeilberger(&term, stored.order().max(1))?;
    let same = derived.equivalent(&stored);
    let detail = format!(
        "operator residual {} at {} points; telescoping gives order {}{}",
        if ok { "below tolerance" } else { "above tolerance" },
        pts.len(),
        derived.order(),
        if same { ", same operator" } else { ", different operator" },
    );
    Ok(EntryCheck {
        passed: ok && same,
        worst: worst.map(|w| w.to_scientific(3)),
        detail,
        residuals,
        ..base
    })
}

/// One row of a corpus run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRow {
    pub name: String,
    pub status: EntryStatus,
    pub outcome: &'static str,
    /// The outcome agrees with the recorded status.
    pub expected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst: Option<String>,
    pub detail: String,
    #[serde(skip)]
    pub wall: Duration,
}

pub fn run_entry(entry: &CorpusEntry, settings: Settings) -> RunRow {
    let start = Instant::now();
    let res = check(entry, settings);
    let wall = start.elapsed();
    let (outcome, worst, detail) = match res {
        Ok(c) => (if c.passed { "pass" } else { "fail" }, c.worst, c.detail),
        Err(e) => ("error", None, e.to_string()),
    };
    let expected = match outcome {
        "pass" => entry.status.expects_pass(),
        "fail" => !entry.status.expects_pass(),
        _ => false,
    };
    RunRow { name: entry.name().to_string(), status: entry.status, outcome, expected, worst, detail, wall }
}

/// Runs entries on worker threads; rows come back sorted by name.
pub fn run_all(entries: &[CorpusEntry], settings: Settings) -> Vec<RunRow> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(entries.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut rows: Vec<RunRow> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                s.spawn(|| {
                    let mut mine = Vec::new();
                    loop {
                        let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        let Some(e) = entries.get(i) else { break };
                        mine.push(run_entry(e, settings));
                    }
                    mine
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("corpus worker panicked")).collect()
    });
    rows.sort_by(|a, b| a.name.cmp(&b.name));
    rows
}

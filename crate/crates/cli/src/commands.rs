//! Subcommand bodies. Each returns an [`Outcome`] holding the exit status,
//! the text report and the JSON document.

use std::path::Path;

use gammaeval::admissibility::solve;
use gammaeval::arith::rational::{fmt_rational, parse_rational};
use gammaeval::arith::Rational;
use gammaeval::contiguity::{decomposition, ShiftVector};
use gammaeval::identity::{IdentityKind, IdentityRecord};
use gammaeval::numerics::certify::PointStatus;
use gammaeval::qseries::{builtin, builtin_names, builtin_source};
use gammaeval::synthesis::synthesize;
use gammaeval::telescoping::{certificate_residue, recurrence_record, zeilberger, HyperTermFamily};
use gammaeval::Error;
use serde_json::{json, Value};

use crate::corpus::{self, CorpusEntry, EntryCheck, EntryStatus, Settings};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 2;
pub const EXIT_DIAGNOSTIC: u8 = 3;
pub const EXIT_USAGE: u8 = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: u8,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn new(code: u8, text: String, json: Value) -> Self {
        Outcome { code, text, json }
    }

    /// Maps an engine error to a diagnostic outcome.
    pub fn from_error(e: &Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::UnknownIdentity(_) | Error::Io(_) | Error::Json(_) => EXIT_USAGE,
            _ => EXIT_DIAGNOSTIC,
        };
        let kind = if code == EXIT_USAGE { "usage" } else { "diagnostic" };
        Outcome::new(code, format!("error: {e}"), json!({ "error": kind, "message": e.to_string() }))
    }

    pub fn usage(message: impl Into<String>) -> Self {
        let m = message.into();
        Outcome::new(EXIT_USAGE, format!("error: {m}"), json!({ "error": "usage", "message": m }))
    }
}

type Res = std::result::Result<Outcome, Error>;

/// Collapses a fallible command into an outcome.
pub fn finish(r: Res) -> Outcome {
    r.unwrap_or_else(|e| Outcome::from_error(&e))
}

pub fn parse_points(src: &str) -> gammaeval::Result<Vec<Rational>> {
    src.split(',').map(str::trim).filter(|s| !s.is_empty()).map(parse_rational).collect()
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn nonzero_shift(shift: &str) -> gammaeval::Result<ShiftVector> {
    let g = ShiftVector::parse(shift)?;
    if g.is_zero() {
        return Err(Error::DegenerateShift("zero shift leaves F unchanged".into()));
    }
    Ok(g)
}

pub fn derive(shift: &str) -> Res {
    let g = nonzero_shift(shift)?;
    let d = decomposition(g);
    let text = format!("F(a+{k},b+{l},c+{m}) = R*F + Q*F'\nR = {}\nQ = {}", d.r, d.q, k = g.k, l = g.l, m = g.m);
    let json = json!({ "shift": g, "r": d.r.to_string(), "q": d.q.to_string() });
    Ok(Outcome::new(EXIT_OK, text, json))
}

pub fn find(shift: &str, hints: Option<&str>) -> Res {
    let g = nonzero_shift(shift)?;
    let hints = hints.map(parse_points).transpose()?.unwrap_or_default();
    let r = solve(g, &hints)?;
    let recs = r.records(g);
    let json = serde_json::to_value(&recs)?;
    let code = if r.families.is_empty() { EXIT_DIAGNOSTIC } else { EXIT_OK };
    Ok(Outcome::new(code, pretty(&json), json))
}

pub fn closed_form(shift: &str, index: usize, prec: usize) -> Res {
    let g = nonzero_shift(shift)?;
    let fams = solve(g, &[])?.families;
    let Some(f) = fams.get(index) else {
        return Ok(Outcome::usage(format!("family index {index} out of range: shift {g} has {} families", fams.len())));
    };
    let e = synthesize(f, prec)?;
    let id = format!("closed-form-{}_{}_{}-{index}", g.k, g.l, g.m);
    let rec = e.identity(id);
    let json = serde_json::to_value(&rec)?;
    let verdict = format!("{:?}", e.certification.verdict);
    let text = format!("{}\nverdict: {verdict}\n{}", e.render(), pretty(&json));
    let code = if e.certification.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok(Outcome::new(code, text, json))
}

pub fn recurrence(upper: &str, lower: &str, z: &str, max_order: usize) -> Res {
    let term = HyperTermFamily::parse(upper, lower, z)?;
    let rec = zeilberger(&term, max_order)?;
    let residue = certificate_residue(&term, &rec)?;
    let record = recurrence_record("recurrence", &term, &rec);
    let mut json = serde_json::to_value(&record)?;
    json["certificate_residue"] = json!(residue.to_string());
    let mut text = format!("order {}\n{rec}", rec.order());
    if let Some(c) = &rec.certificate {
        text.push_str(&format!("\ncertificate rho(t,n) = {}", c.rho));
    }
    text.push_str(&format!("\ncertificate residue = {residue}"));
    let code = if residue.is_zero() { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok(Outcome::new(code, text, json))
}

/// Reads `corpus:NAME` or a JSON file holding a corpus entry or a bare
/// identity record.
pub fn load_identity(src: &str) -> gammaeval::Result<CorpusEntry> {
    if let Some(name) = src.strip_prefix("corpus:") {
        return corpus::get(name);
    }
    let text = std::fs::read_to_string(Path::new(src)).map_err(|e| Error::Io(format!("{src}: {e}")))?;
    if let Ok(e) = CorpusEntry::from_json(&text) {
        return Ok(e);
    }
    let record = IdentityRecord::from_json(&text)?;
    Ok(CorpusEntry { record, params: Default::default(), source: String::new(), status: EntryStatus::Certified })
}

fn report(c: &EntryCheck) -> String {
    let mut lines = vec![format!("{} ({:?})", c.name, c.kind)];
    if let Some(cert) = &c.certification {
        for p in &cert.points {
            let t = fmt_rational(&p.t);
            let line = match &p.status {
                PointStatus::Pass => format!("  t = {t}: pass, residual {}", p.residual.as_deref().unwrap_or("0")),
                PointStatus::Fail => format!(
                    "  t = {t}: FAIL, residual {}, lhs {}, rhs {}",
                    p.residual.as_deref().unwrap_or("?"),
                    p.lhs.as_deref().unwrap_or("?"),
                    p.rhs.as_deref().unwrap_or("?")
                ),
                PointStatus::Skipped(why) => format!("  t = {t}: skipped ({why})"),
            };
            lines.push(line);
        }
    }
    for (t, r) in &c.residuals {
        lines.push(format!("  t = {t}: operator residual {r}"));
    }
    lines.push(c.detail.clone());
    if let Some(w) = &c.worst {
        lines.push(format!("worst: {w}"));
    }
    lines.push(if c.passed { "PASS".into() } else { "FAIL".into() });
    lines.join("\n")
}

fn checked(c: EntryCheck) -> Res {
    let json = serde_json::to_value(&c)?;
    let code = if c.passed { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok(Outcome::new(code, report(&c), json))
}

pub fn verify(src: &str, points: Option<&str>, settings: Settings) -> Res {
    let entry = load_identity(src)?;
    let pts = points.map(parse_points).transpose()?;
    checked(corpus::check_with(&entry, settings, pts.as_deref())?)
}

/// Built-in name, corpus name or JSON file.
pub fn qverify(src: &str, settings: Settings) -> Res {
    let entry = if builtin_names().contains(&src) {
        let record = builtin(src)?.record();
        CorpusEntry {
            record,
            params: Default::default(),
            source: builtin_source(src)?.to_string(),
            status: EntryStatus::Certified,
        }
    } else if Path::new(src).is_file() {
        load_identity(src)?
    } else {
        load_identity(&format!("corpus:{}", src.strip_prefix("corpus:").unwrap_or(src)))?
    };
    if entry.record.kind != IdentityKind::QIdentity {
        return Ok(Outcome::usage(format!("{} is not a q-identity", entry.name())));
    }
    checked(corpus::check(&entry, settings)?)
}

pub fn corpus_run(pattern: &str, status: Option<EntryStatus>, settings: Settings) -> Res {
    let entries: Vec<CorpusEntry> =
        corpus::select(pattern)?.into_iter().filter(|e| status.map_or(true, |s| e.status == s)).collect();
    let rows = corpus::run_all(&entries, settings);
    let mut text = format!("{:<32} {:<10} {:<8} {:<12} {:>9}", "name", "status", "outcome", "worst", "wall");
    for r in &rows {
        let flag = if r.expected { "" } else { "  <- unexpected" };
        text.push_str(&format!(
            "\n{:<32} {:<10} {:<8} {:<12} {:>8.2}s{flag}",
            r.name,
            r.status.as_str(),
            r.outcome,
            r.worst.as_deref().unwrap_or("-"),
            r.wall.as_secs_f64()
        ));
    }
    let bad = rows.iter().filter(|r| !r.expected).count();
    text.push_str(&format!("\n{} entries, {} unexpected", rows.len(), bad));
    let json = serde_json::to_value(&rows)?;
    Ok(Outcome::new(if bad == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED }, text, json))
}

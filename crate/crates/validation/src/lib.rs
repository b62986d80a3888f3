//! Bookkeeping for the acceptance suite: each criterion collects checks and
//! notes, then prints a single PASS or FAIL line followed by details.

use std::time::{Duration, Instant};

pub struct Criterion {
    pub number: u32,
    pub title: &'static str,
    limit: Duration,
    start: Instant,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    pub fn new(number: u32, title: &'static str, limit_secs: u64) -> Self {
        Criterion {
            number,
            title,
            limit: Duration::from_secs(limit_secs),
            start: Instant::now(),
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records a failure message unless `ok`.
    pub fn check(&mut self, ok: bool, what: impl Into<String>) -> bool {
        if !ok {
            self.failures.push(what.into());
        }
        ok
    }

    pub fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    pub fn fail(&mut self, what: impl Into<String>) {
        self.failures.push(what.into());
    }

    /// Prints the verdict line and details; the wall-clock limit is part of
    /// the verdict.
    pub fn finish(mut self) -> bool {
        let wall = self.start.elapsed();
        if wall > self.limit {
            self.failures.push(format!("took {:.2}s, limit {}s", wall.as_secs_f64(), self.limit.as_secs()));
        }
        let ok = self.failures.is_empty();
        println!(
            "criterion {}: {} - {} ({:.2}s)",
            self.number,
            if ok { "PASS" } else { "FAIL" },
            self.title,
            wall.as_secs_f64()
        );
        for f in &self.failures {
            println!("    failed: {f}");
        }
        for n in &self.notes {
            println!("    note: {n}");
        }
        ok
    }
}

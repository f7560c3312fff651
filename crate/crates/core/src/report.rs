//! Pass/fail reports shared by every verification suite.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Informational entry (e.g. the outcome of a printed-but-false variant);
    /// never affects the exit code.
    Note,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), checks: Vec::new(), timing_ms: None, elapsed: Duration::ZERO }
    }

    /// Runs `f` on a fresh report and records wall time.
    pub fn timed(suite: impl Into<String>, f: impl FnOnce(&mut Report)) -> Self {
        let mut r = Report::new(suite);
        let t = Instant::now();
        f(&mut r);
        r.elapsed = t.elapsed();
        r
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, witness: Option<String>) {
        self.checks.push(Check { name: name.into(), status, witness });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(name, Status::Pass, None);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.push(name, Status::Fail, Some(witness.into()));
    }

    pub fn note(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(name, Status::Note, Some(detail.into()));
    }

    /// Pass when `ok`, otherwise fail with the lazily built witness.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, witness());
        }
    }

    /// Pass with an informative witness, or fail with it.
    pub fn check_with(&mut self, name: impl Into<String>, ok: bool, witness: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(name, status, Some(witness.into()));
    }

    pub fn absorb(&mut self, other: Report) {
        let prefix = other.suite.clone();
        for c in other.checks {
            self.checks.push(Check { name: format!("{prefix}: {}", c.name), ..c });
        }
        self.elapsed += other.elapsed;
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn with_timing(mut self) -> Self {
        self.timing_ms = Some(self.elapsed.as_millis());
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.suite);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Note => "NOTE",
            };
            match &c.witness {
                Some(w) => {
                    let _ = writeln!(out, "[{tag}] {} -- {w}", c.name);
                }
                None => {
                    let _ = writeln!(out, "[{tag}] {}", c.name);
                }
            }
        }
        let _ = write!(out, "-- {} pass, {} fail, {} note", self.count(Status::Pass), self.count(Status::Fail), self.count(Status::Note));
        if let Some(ms) = self.timing_ms {
            let _ = write!(out, " ({ms} ms)");
        }
        out.push('\n');
        out
    }
}

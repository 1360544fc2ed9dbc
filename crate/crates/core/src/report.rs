//! Check outcomes and their aggregation.

use crate::exterior::{Form, VectorField};
use crate::poly::Poly;
use crate::rat::Rat;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The identity holds for degree reasons on this chart (e.g. a 6-form on R^5).
    Vacuous,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Vacuous => "vacuous",
        }
    }
}

/// Outcome of one named identity check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Number of evaluated cases (tuples from a generating family, or 1).
    pub cases: usize,
    /// Number of cases with a nonzero residual.
    pub failures: usize,
    /// Where the first failure occurred.
    pub witness: Option<String>,
    /// The first nonzero residual, printed exactly.
    pub residual: Option<String>,
    pub elapsed: Duration,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn vacuous(name: impl Into<String>, reason: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Vacuous,
            cases: 0,
            failures: 0,
            witness: Some(reason.into()),
            residual: None,
            elapsed: Duration::ZERO,
        }
    }
}

/// Values that can be tested for exact vanishing.
pub trait Residual {
    /// `None` when zero, otherwise a printed witness.
    fn residual(&self) -> Option<String>;
}

impl Residual for Rat {
    fn residual(&self) -> Option<String> {
        (!self.is_zero()).then(|| self.to_string())
    }
}

impl Residual for Poly {
    fn residual(&self) -> Option<String> {
        (!self.is_zero()).then(|| self.to_string())
    }
}

impl Residual for [Poly] {
    fn residual(&self) -> Option<String> {
        if self.iter().all(Poly::is_zero) {
            return None;
        }
        let parts: Vec<String> = self.iter().map(|p| p.to_string()).collect();
        Some(format!("({})", parts.join(", ")))
    }
}

impl Residual for Vec<Poly> {
    fn residual(&self) -> Option<String> {
        self.as_slice().residual()
    }
}

impl Residual for [Rat] {
    fn residual(&self) -> Option<String> {
        if self.iter().all(Rat::is_zero) {
            return None;
        }
        let parts: Vec<String> = self.iter().map(|p| p.to_string()).collect();
        Some(format!("({})", parts.join(", ")))
    }
}

impl Residual for Vec<Rat> {
    fn residual(&self) -> Option<String> {
        self.as_slice().residual()
    }
}

impl Residual for Form {
    fn residual(&self) -> Option<String> {
        (!self.is_zero()).then(|| self.to_string())
    }
}

impl Residual for VectorField {
    fn residual(&self) -> Option<String> {
        (!self.is_zero()).then(|| self.to_string())
    }
}

/// Accumulates cases for one check, keeping the first failure.
pub struct Checker {
    name: String,
    cases: usize,
    failures: usize,
    witness: Option<String>,
    residual: Option<String>,
    start: Instant,
}

impl Checker {
    pub fn new(name: impl Into<String>) -> Checker {
        Checker {
            name: name.into(),
            cases: 0,
            failures: 0,
            witness: None,
            residual: None,
            start: Instant::now(),
        }
    }

    /// Record one case; `at` describes the inputs and is only built on failure.
    pub fn case<R: Residual + ?Sized>(&mut self, at: impl FnOnce() -> String, value: &R) {
        self.cases += 1;
        if let Some(r) = value.residual() {
            self.failures += 1;
            if self.residual.is_none() {
                self.witness = Some(at());
                self.residual = Some(r);
            }
        }
    }

    /// Record a failure that has no algebraic residual (e.g. a shape error).
    pub fn fail(&mut self, at: impl Into<String>, what: impl Into<String>) {
        self.cases += 1;
        self.failures += 1;
        if self.residual.is_none() {
            self.witness = Some(at.into());
            self.residual = Some(what.into());
        }
    }

    pub fn failed(&self) -> bool {
        self.failures > 0
    }

    pub fn cases_seen(&self) -> usize {
        self.cases
    }

    pub fn finish(self) -> Check {
        Check {
            name: self.name,
            status: if self.failures == 0 { Status::Pass } else { Status::Fail },
            cases: self.cases,
            failures: self.failures,
            witness: self.witness,
            residual: self.residual,
            elapsed: self.start.elapsed(),
        }
    }
}

/// A collection of checks.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Prefix every check name with `scope.`.
    pub fn scoped(mut self, scope: &str) -> Report {
        for c in &mut self.checks {
            c.name = format!("{scope}.{}", c.name);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Checks sorted by name, for stable output.
    pub fn sorted(&self) -> Vec<&Check> {
        let mut v: Vec<&Check> = self.checks.iter().collect();
        v.sort_by(|a, b| a.name.cmp(&b.name));
        v
    }
}

/// One-case check of a single value.
pub fn check_zero<R: Residual + ?Sized>(name: &str, value: &R) -> Check {
    let mut c = Checker::new(name);
    c.case(String::new, value);
    c.finish()
}

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use serde::{Deserialize, Serialize};

/// One coordinate of a checked parameter point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    Real(f64),
}

impl Param {
    fn total_cmp(&self, other: &Param) -> Ordering {
        match (self, other) {
            (Param::Int(a), Param::Int(b)) => a.cmp(b),
            (a, b) => a.as_f64().total_cmp(&b.as_f64()),
        }
    }

    pub fn as_f64(&self) -> f64 {
        match *self {
            Param::Int(v) => v as f64,
            Param::Real(v) => v,
        }
    }
}

impl From<u64> for Param {
    fn from(v: u64) -> Self {
        Param::Int(v as i64)
    }
}

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Real(v)
    }
}

pub type Params = BTreeMap<String, Param>;

/// Builds a parameter map from `(name, value)` pairs.
pub fn params<const N: usize>(pairs: [(&str, Param); N]) -> Params {
    pairs.into_iter().map(|(k, v)| (String::from(k), v)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub params: Params,
    pub claim: String,
    pub lhs: String,
    pub rhs: String,
}

impl Failure {
    fn sort_key_cmp(&self, other: &Failure) -> Ordering {
        self.claim
            .cmp(&other.claim)
            .then_with(|| {
                let a = self.params.iter();
                let b = other.params.iter();
                for ((ka, va), (kb, vb)) in a.zip(b) {
                    let ord = ka.cmp(kb).then_with(|| va.total_cmp(vb));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                self.params.len().cmp(&other.params.len())
            })
            .then_with(|| self.lhs.cmp(&other.lhs))
            .then_with(|| self.rhs.cmp(&other.rhs))
    }
}

/// Inclusive parameter ranges a suite sweeps. Suites document which
/// coordinates they read; unused ones are ignored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rectangle {
    pub n: (u64, u64),
    pub p: (u64, u64),
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x_points: Option<u64>,
}

impl Rectangle {
    pub fn new(n: (u64, u64), p: (u64, u64)) -> Self {
        Rectangle {
            n,
            p,
            x_points: None,
        }
    }

    pub fn with_x_points(mut self, points: u64) -> Self {
        self.x_points = Some(points);
        self
    }
}

impl fmt::Display for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n=[{},{}] p=[{},{}]", self.n.0, self.n.1, self.p.0, self.p.1)?;
        if let Some(x) = self.x_points {
            write!(f, " x_points={x}")?;
        }
        Ok(())
    }
}

/// Failures retained per claim; the count in `failed` is always complete.
pub const STORED_PER_CLAIM: usize = 20;

/// Outcome of one suite over its rectangle. `elapsed_s` is left at zero by
/// the core and filled by whoever times the run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub rectangle: Rectangle,
    pub checks: u64,
    /// Number of failed checks; `failures` keeps the first few per claim.
    pub failed: u64,
    pub failures: Vec<Failure>,
    #[serde(default)]
    pub indeterminate: u64,
    #[serde(default)]
    pub skipped: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<VerifyReport>,
    pub elapsed_s: f64,
}

impl VerifyReport {
    pub fn new(suite: &str, rectangle: Rectangle) -> Self {
        VerifyReport {
            suite: String::from(suite),
            rectangle,
            checks: 0,
            failed: 0,
            failures: Vec::new(),
            indeterminate: 0,
            skipped: 0,
            notes: Vec::new(),
            parts: Vec::new(),
            elapsed_s: 0.0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.parts.iter().all(VerifyReport::passed)
    }

    /// Failed checks including nested parts.
    pub fn failure_count(&self) -> u64 {
        self.failed + self.parts.iter().map(VerifyReport::failure_count).sum::<u64>()
    }

    /// Checks run including nested parts.
    pub fn check_count(&self) -> u64 {
        self.checks + self.parts.iter().map(VerifyReport::check_count).sum::<u64>()
    }

    /// Counts one check and records it if it failed.
    pub fn record(&mut self, verdict: Verdict, claim: &str, params: impl FnOnce() -> Params) {
        self.checks += 1;
        match verdict {
            Verdict::Pass => {}
            Verdict::Fail { lhs, rhs } => {
                self.failed += 1;
                self.failures.push(Failure {
                    params: params(),
                    claim: String::from(claim),
                    lhs,
                    rhs,
                });
                if self.failures.len() >= 4 * STORED_PER_CLAIM {
                    self.normalize();
                }
            }
            Verdict::Indeterminate => self.indeterminate += 1,
            Verdict::Skipped => self.skipped += 1,
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds another report of the same suite into this one. The result
    /// does not depend on merge order.
    pub fn merge(&mut self, other: VerifyReport) {
        self.checks += other.checks;
        self.failed += other.failed;
        self.indeterminate += other.indeterminate;
        self.skipped += other.skipped;
        self.elapsed_s += other.elapsed_s;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
        self.parts.extend(other.parts);
        self.normalize();
    }

    /// Sorts failures, notes and parts into their canonical order and keeps
    /// the first [`STORED_PER_CLAIM`] failures of each claim.
    pub fn normalize(&mut self) {
        self.failures.sort_by(Failure::sort_key_cmp);
        let mut kept = 0;
        let mut last: Option<String> = None;
        self.failures.retain(|f| {
            if last.as_deref() != Some(f.claim.as_str()) {
                last = Some(f.claim.clone());
                kept = 0;
            }
            kept += 1;
            kept <= STORED_PER_CLAIM
        });
        self.notes.sort();
        self.notes.dedup();
        self.parts.sort_by(|a, b| a.suite.cmp(&b.suite));
    }

    /// Zeroes every `elapsed_s`, recursively.
    pub fn clear_timing(&mut self) {
        self.elapsed_s = 0.0;
        for part in &mut self.parts {
            part.clear_timing();
        }
    }
}

/// Result of a single exact check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail { lhs: String, rhs: String },
    /// The point sits on a tie the claim does not decide.
    Indeterminate,
    /// Outside the claim's domain (a guard vanished).
    Skipped,
}

impl Verdict {
    pub fn holds(ok: bool, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail {
                lhs: alloc::format!("{lhs}"),
                rhs: alloc::format!("{rhs}"),
            }
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fail(n: u64) -> VerifyReport {
        let mut r = VerifyReport::new("s", Rectangle::new((1, 2), (0, 0)));
        r.record(
            Verdict::Fail {
                lhs: "1".into(),
                rhs: "0".into(),
            },
            "c",
            || params([("n", n.into())]),
        );
        r.note(alloc::format!("note {n}"));
        r
    }

    #[test]
    fn merge_is_order_independent() {
        let mut a = fail(10);
        a.merge(fail(2));
        let mut b = fail(2);
        b.merge(fail(10));
        assert_eq!(a, b);
        assert_eq!(a.failures[0].params["n"], Param::Int(2));
        assert!(!a.passed());
    }

    #[test]
    fn truncation_keeps_count_and_is_order_independent() {
        let mut a = VerifyReport::new("s", Rectangle::new((1, 100), (0, 0)));
        let mut b = a.clone();
        for n in 0..100 {
            a.merge(fail(n));
            b.merge(fail(99 - n));
        }
        assert_eq!(a, b);
        assert_eq!(a.failed, 100);
        assert_eq!(a.failures.len(), STORED_PER_CLAIM);
        assert_eq!(a.failures[0].params["n"], Param::Int(0));
    }

    #[test]
    fn counts() {
        let mut r = VerifyReport::new("s", Rectangle::new((1, 1), (0, 0)));
        r.record(Verdict::Pass, "c", Params::new);
        r.record(Verdict::Indeterminate, "c", Params::new);
        r.record(Verdict::Skipped, "c", Params::new);
        assert_eq!((r.checks, r.indeterminate, r.skipped), (3, 1, 1));
        assert!(r.passed());
    }
}

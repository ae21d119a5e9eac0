//! Runs suites with per-leaf timing, leaves of a group in parallel.

use std::sync::Mutex;
use std::thread;
use std::time::Instant;

use brunel_core::analysis::{normalize_suite_name, run_suite, AnalysisError, Rectangle, SuiteKind, VerifyReport, SUITES};

/// Overrides applied to each leaf's default rectangle.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RectOverride {
    pub n_min: Option<u64>,
    pub n_max: Option<u64>,
    pub p_min: Option<u64>,
    pub p_max: Option<u64>,
    pub x_points: Option<u64>,
}

impl RectOverride {
    pub fn apply(&self, mut r: Rectangle) -> Rectangle {
        r.n.0 = self.n_min.unwrap_or(r.n.0);
        r.n.1 = self.n_max.unwrap_or(r.n.1);
        r.p.0 = self.p_min.unwrap_or(r.p.0);
        r.p.1 = self.p_max.unwrap_or(r.p.1);
        if self.x_points.is_some() {
            r.x_points = self.x_points;
        }
        r
    }
}

fn info(name: &str) -> Result<&'static brunel_core::analysis::SuiteInfo, AnalysisError> {
    let key = normalize_suite_name(name);
    SUITES
        .iter()
        .find(|s| s.name == key)
        .ok_or(AnalysisError::UnknownSuite(name.to_string()))
}

fn run_leaf(name: &'static str, overrides: &RectOverride) -> VerifyReport {
    let rect = overrides.apply(info(name).expect("registered leaf").default_rectangle());
    let start = Instant::now();
    let mut report = run_suite(name, Some(&rect)).expect("registered leaf");
    report.elapsed_s = start.elapsed().as_secs_f64();
    report
}

/// Runs a leaf or a group; a group's leaves share `jobs` worker threads.
pub fn verify(name: &str, overrides: &RectOverride, jobs: usize) -> Result<VerifyReport, AnalysisError> {
    let suite = info(name)?;
    let parts = match &suite.kind {
        SuiteKind::Leaf(_) => return Ok(run_leaf(suite.name, overrides)),
        SuiteKind::Group(parts) => *parts,
    };
    let start = Instant::now();
    let queue = Mutex::new(parts.iter());
    let done = Mutex::new(Vec::with_capacity(parts.len()));
    thread::scope(|s| {
        for _ in 0..jobs.clamp(1, parts.len().max(1)) {
            s.spawn(|| loop {
                let next = queue.lock().unwrap().next();
                let Some(&leaf) = next else { break };
                let report = run_leaf(leaf, overrides);
                done.lock().unwrap().push(report);
            });
        }
    });
    let mut report = VerifyReport::new(suite.name, overrides.apply(suite.default_rectangle()));
    report.parts = done.into_inner().unwrap();
    report.normalize();
    report.elapsed_s = start.elapsed().as_secs_f64();
    Ok(report)
}

/// JSON with every `elapsed_s` zeroed, for comparing runs.
pub fn timing_free_json(report: &VerifyReport) -> String {
    let mut r = report.clone();
    r.clear_timing();
    serde_json::to_string_pretty(&r).expect("reports serialize")
}

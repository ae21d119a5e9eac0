//! Acceptance criteria, one PASS/FAIL line each. Exits 1 if any fails.

use std::process::ExitCode;
use std::thread::available_parallelism;
use std::time::{Duration, Instant};

use brunel::figure::{fig1, fig3};
use brunel::verify::{timing_free_json, verify, RectOverride};
use brunel_core::analysis::VerifyReport;

const ORACLE_SHIFT_LIMIT: Duration = Duration::from_secs(30);
const SUM_BOUND_LIMIT: Duration = Duration::from_secs(120);
const FIG1_N: [u64; 2] = [10, 20];
const FIG1_P_MAX: u64 = 60;
const FIG3_N: u64 = 40;
const FIG3_X: f64 = 0.999;
const FIG3_FLOOR: f64 = 0.1;

struct Outcome {
    pass: bool,
    detail: String,
}

fn jobs() -> usize {
    available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn run(name: &str) -> VerifyReport {
    verify(name, &RectOverride::default(), jobs()).expect("registered suite")
}

fn summary(r: &VerifyReport) -> String {
    format!("{}: {} checks, {} failed", r.suite, r.check_count(), r.failure_count())
}

fn suites(names: &[&str], limit: Option<Duration>) -> Outcome {
    let start = Instant::now();
    let reports: Vec<VerifyReport> = names.iter().map(|n| run(n)).collect();
    let elapsed = start.elapsed();
    let mut pass = reports.iter().all(VerifyReport::passed);
    let mut detail = reports.iter().map(summary).collect::<Vec<_>>().join("; ");
    if let Some(limit) = limit {
        pass &= elapsed < limit;
        detail.push_str(&format!("; {:.2}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs()));
    }
    Outcome { pass, detail }
}

fn appendix() -> Outcome {
    let mut out = suites(&["appendix"], None);
    let report = run("appendix");
    for note in &report.notes {
        out.detail.push_str("; ");
        out.detail.push_str(note);
    }
    out
}

fn figures() -> Outcome {
    let rows = fig1(&FIG1_N, FIG1_P_MAX);
    let mut pass = true;
    let mut detail = Vec::new();
    for n in FIG1_N {
        let diffs = rows.iter().filter(|r| r.n == n && r.kind == "diff");
        let (argmax, _) = diffs
            .map(|r| (r.p, r.diff.unwrap()))
            .fold((0.0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
        let k = rows.iter().find(|r| r.n == n && r.kind == "K_n").map(|r| r.p);
        let ok = k.is_some_and(|k| k < argmax);
        pass &= ok;
        detail.push(format!("n={n}: K_n={:.4} argmax p={argmax}", k.unwrap_or(f64::NAN)));
    }
    let value = fig3(&[FIG3_N], &[FIG3_X])[0].value;
    let ok = value.abs() >= FIG3_FLOOR;
    pass &= ok;
    detail.push(format!("FIG3 n={FIG3_N} x={FIG3_X}: {value:.6} (need |value| >= {FIG3_FLOOR})"));
    Outcome { pass, detail: detail.join("; ") }
}

fn determinism() -> Outcome {
    let first = timing_free_json(&run("all"));
    let second = timing_free_json(&run("all"));
    Outcome {
        pass: first == second,
        detail: format!("{} bytes, identical: {}", first.len(), first == second),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("closed form vs oracle, shift identity", || suites(&["oracle", "shift"], Some(ORACLE_SHIFT_LIMIT))),
        ("recurrences", || suites(&["recurrences"], None)),
        ("threshold equivalences", || suites(&["thresholds"], None)),
        ("coefficient bounds", || suites(&["bounds"], None)),
        ("sum of differences bound", || suites(&["sum-bound"], Some(SUM_BOUND_LIMIT))),
        ("sum closed form, S monotone", || suites(&["sum-closed-form", "s-monotone"], None)),
        ("technical lemma, Cesaro domination", || suites(&["technical-lemma", "domination"], None)),
        ("operator power and mean bounds", || suites(&["power-bound", "mean-bound"], None)),
        ("appendix matrix", appendix),
        ("figure data", figures),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let out = check();
        failed += usize::from(!out.pass);
        println!("{} {:>2} {name}: {}", if out.pass { "PASS" } else { "FAIL" }, i + 1, out.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

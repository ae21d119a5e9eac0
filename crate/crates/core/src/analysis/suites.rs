use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Roots;

use super::checks::*;
use super::constants::{majorant, MAJORANT_ENVELOPE};
use super::report::{params, Param, Rectangle, Verdict, VerifyReport};
use super::thresholds::{smallest_n_with_nonnegative_roots, thresholds};
use super::AnalysisError;
use crate::arith::Rational;
use crate::coeffs::{
    alpha, alpha_recurrence_check, alpha_row_f64, alpha_tail_bound, alternating_tail_bound, beta,
    beta_recurrence_check, oracle_alpha, psi_eval, sum_alpha,
};

pub enum SuiteKind {
    Leaf(fn(&Rectangle) -> VerifyReport),
    Group(&'static [&'static str]),
}

pub struct SuiteInfo {
    pub name: &'static str,
    pub about: &'static str,
    pub n: (u64, u64),
    pub p: (u64, u64),
    pub x_points: Option<u64>,
    pub kind: SuiteKind,
}

impl SuiteInfo {
    pub fn default_rectangle(&self) -> Rectangle {
        Rectangle {
            n: self.n,
            p: self.p,
            x_points: self.x_points,
        }
    }

    pub fn is_group(&self) -> bool {
        matches!(self.kind, SuiteKind::Group(_))
    }
}

macro_rules! leaf {
    ($name:literal, $about:literal, $n:expr, $p:expr, $f:expr) => {
        SuiteInfo {
            name: $name,
            about: $about,
            n: $n,
            p: $p,
            x_points: None,
            kind: SuiteKind::Leaf($f),
        }
    };
}

macro_rules! group {
    ($name:literal, $about:literal, [$($part:literal),* $(,)?]) => {
        SuiteInfo {
            name: $name,
            about: $about,
            n: (0, 0),
            p: (0, 0),
            x_points: None,
            kind: SuiteKind::Group(&[$($part),*]),
        }
    };
}

/// Every registered suite. `n` and `p` are the default inclusive ranges.
pub static SUITES: &[SuiteInfo] = &[
    leaf!("oracle", "closed form equals the convolution oracle", (1, 30), (0, 30), oracle),
    leaf!("shift", "beta(n, p+n) = alpha(n, p); beta vanishes below p = n", (1, 40), (0, 100), shift),
    leaf!("alpha-recurrence", "alpha(n+1,p) = 2 alpha(n,p+1) - alpha(n-1,p+1)", (2, 40), (0, 200), alpha_recurrence),
    leaf!("beta-recurrence", "beta(N+1,p) = 2 beta(N,p) - beta(N-1,p-1)", (2, 40), (0, 120), beta_recurrence),
    leaf!("monotonicity", "monotonicity of alpha in n; subadditivity", (1, 25), (0, 120), monotonicity),
    leaf!("sum-closed-form", "closed form of sum_n alpha(n,p); telescoping", (1, 40), (0, 100), sum_closed_form),
    leaf!("i-equivalence", "alpha grows in p iff p <= I_n", (1, 40), (0, 600), i_equivalence),
    leaf!("j-equivalence", "alpha shrinks in n iff p <= J_n", (1, 40), (0, 900), j_equivalence),
    leaf!("k-equivalence", "differences grow iff the quadratic criterion holds", (2, 40), (0, 600), k_equivalence),
    leaf!("upper-lower-k", "three-region classification by the quadratic's roots", (1, 40), (0, 600), upper_lower_k),
    leaf!("k-threshold", "p <= K_n implies growing differences", (2, 40), (0, 600), k_threshold),
    leaf!("k-order", "K_n <= J_n and K_n <= lower root", (1, 500), (0, 0), k_order),
    leaf!("difference-growth", "|diff| grows for 1 <= p <= K_n", (2, 40), (1, 600), difference_growth),
    leaf!("uniform-estimate", "uniform-in-n bound on |alpha(n+1,p) - alpha(n,p)|", (1, 60), (1, 400), uniform_estimate),
    leaf!("quotient-identity", "closed form of the difference quotient", (1, 30), (0, 200), quotient_identity),
    leaf!("alpha0-difference", "|alpha(n+1,0) - alpha(n,0)| against its stated value", (1, 60), (0, 0), alpha0_difference),
    leaf!("majorant", "summability of the Weierstrass majorant; p range end is P", (0, 0), (0, 10_000), majorant_suite),
    leaf!("sum-bound", "sum_p |alpha(n+1,p) - alpha(n,p)| <= 33/(2n); p range end is P_tail", (1, 40), (10_000, 10_000), sum_bound),
    leaf!("sean-lemma", "2^(-n-2p) C(n+2p,p) <= e^(1/12)/sqrt(pi p)", (1, 100), (1, 400), sean_lemma),
    leaf!("in-bound", "alpha at floor(I_n) <= M/floor(I_n)", (6, 200), (0, 0), in_bound),
    leaf!("gamma", "c(n,p) against e^(-1/(2K)) and e^(-K/2), K in {1,2,4}", (1, 60), (1, 3600), gamma),
    leaf!("technical-lemma", "1/N <= C/m sum_{j<=m} alpha(j,k), m = floor(sqrt N); n range is N", (1, 400), (0, 0), technical_lemma),
    leaf!("s-monotone", "S(k) = sum_{n<=sqrt N} alpha(n,k) is nonincreasing; n range is N", (1, 100), (0, 120), s_monotone),
    SuiteInfo {
        name: "corollaries",
        about: "function-level bounds on an x grid",
        n: (1, 40),
        p: (0, 0),
        x_points: Some(1024),
        kind: SuiteKind::Leaf(corollaries),
    },
    leaf!("power-bound", "n||A^n - A^(n+1)|| <= 33M/2 on reference matrices", (1, 40), (0, 0), crate::operator::power_bound_suite),
    leaf!("mean-bound", "mean-bounded variant, constant 99/2, on reference matrices", (1, 30), (0, 0), crate::operator::mean_bound_suite),
    leaf!("domination", "Cesaro averages dominated by Brunel averages; n range is N", (1, 200), (0, 0), crate::operator::domination_suite),
    leaf!("appendix", "closed form of A^n for the 2x2 appendix matrix", (1, 12), (0, 0), crate::operator::appendix_suite),
    group!("recurrences", "both recurrences", ["alpha-recurrence", "beta-recurrence"]),
    group!("thresholds", "threshold equivalences", ["i-equivalence", "j-equivalence", "k-equivalence", "upper-lower-k"]),
    group!("bounds", "coefficient bounds", ["uniform-estimate", "sean-lemma", "in-bound", "quotient-identity"]),
    group!("operator", "matrix-scale theorems", ["power-bound", "mean-bound", "domination", "appendix"]),
    group!("all", "every leaf suite", [
        "oracle", "shift", "alpha-recurrence", "beta-recurrence", "monotonicity", "sum-closed-form",
        "i-equivalence", "j-equivalence", "k-equivalence", "upper-lower-k", "k-threshold", "k-order",
        "difference-growth", "uniform-estimate", "quotient-identity", "alpha0-difference", "majorant",
        "sum-bound", "sean-lemma", "in-bound", "gamma", "technical-lemma", "s-monotone", "corollaries",
        "power-bound", "mean-bound", "domination", "appendix",
    ]),
];

/// Lowercases and maps `_` to `-`, so `sum_bound` names `sum-bound`.
pub fn normalize_suite_name(name: &str) -> String {
    name.trim().to_ascii_lowercase().replace('_', "-")
}

fn lookup(name: &str) -> Result<&'static SuiteInfo, AnalysisError> {
    let key = normalize_suite_name(name);
    SUITES
        .iter()
        .find(|s| s.name == key)
        .ok_or(AnalysisError::UnknownSuite(String::from(name)))
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

pub fn default_rectangle(name: &str) -> Result<Rectangle, AnalysisError> {
    Ok(lookup(name)?.default_rectangle())
}

/// Runs a suite over `rectangle`, or its default when `None`. A group runs
/// each part over the part's own default unless a rectangle is given.
/// Deterministic; `elapsed_s` is left at zero.
pub fn run_suite(name: &str, rectangle: Option<&Rectangle>) -> Result<VerifyReport, AnalysisError> {
    let info = lookup(name)?;
    match &info.kind {
        SuiteKind::Leaf(run) => {
            let rect = rectangle.cloned().unwrap_or_else(|| info.default_rectangle());
            let mut report = run(&rect);
            report.normalize();
            Ok(report)
        }
        SuiteKind::Group(parts) => {
            let mut report = VerifyReport::new(info.name, rectangle.cloned().unwrap_or_else(|| info.default_rectangle()));
            for part in parts.iter() {
                report.parts.push(run_suite(part, rectangle)?);
            }
            report.normalize();
            Ok(report)
        }
    }
}

fn np(n: u64, p: u64) -> super::Params {
    params([("n", n.into()), ("p", p.into())])
}

fn range(r: (u64, u64)) -> core::ops::RangeInclusive<u64> {
    r.0..=r.1
}

fn oracle(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("oracle", r.clone());
    for n in range(r.n).filter(|&n| n >= 1) {
        let series = oracle_alpha(n, r.p.1);
        for p in range(r.p) {
            let (lhs, rhs) = (alpha(n, p), &series.coeffs()[p as usize]);
            rep.record(Verdict::holds(&lhs == rhs, show(&lhs), show(rhs)), "closed-form-equals-oracle", || np(n, p));
        }
    }
    rep
}

fn shift(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("shift", r.clone());
    for n in range(r.n).filter(|&n| n >= 1) {
        for p in range(r.p) {
            let (lhs, rhs) = (beta(n, p + n), alpha(n, p));
            rep.record(Verdict::holds(lhs == rhs, show(&lhs), show(&rhs)), "beta-shift", || np(n, p));
        }
        for p in 0..n {
            let b = beta(n, p);
            rep.record(Verdict::holds(b.is_zero(), show(&b), "0"), "beta-vanishes-below-n", || np(n, p));
        }
    }
    rep
}

fn alpha_recurrence(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("alpha-recurrence", r.clone());
    for n in range(r.n).filter(|&n| n >= 2) {
        for p in range(r.p) {
            let ok = alpha_recurrence_check(n, p);
            rep.record(Verdict::holds(ok, "alpha(n+1,p)", "2 alpha(n,p+1) - alpha(n-1,p+1)"), "alpha-recurrence", || np(n, p));
        }
    }
    rep
}

fn beta_recurrence(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("beta-recurrence", r.clone());
    for n in range(r.n).filter(|&n| n >= 2) {
        for p in range(r.p) {
            let ok = beta_recurrence_check(n, p);
            rep.record(Verdict::holds(ok, "beta(N+1,p)", "2 beta(N,p) - beta(N-1,p-1)"), "beta-recurrence", || np(n, p));
        }
    }
    rep
}

fn monotonicity(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("monotonicity", r.clone());
    let ns: Vec<u64> = range(r.n).filter(|&n| n >= 1).collect();
    for &n in &ns {
        for p in range(r.p) {
            for (i, &m) in ns.iter().enumerate() {
                let [scaled, weighted, sub] = check_monotonicity(n, m, p);
                if i == 0 {
                    rep.record(scaled, "scaled-decrease", || np(n, p));
                    rep.record(weighted, "weighted-difference-nonnegative", || np(n, p));
                }
                rep.record(sub, "subadditive", || params([("m", m.into()), ("n", n.into()), ("p", p.into())]));
            }
        }
    }
    rep.note(format!(
        "the intermediate expression (n^2-3n-2)/(2(n+p+1)(n+2p)) is positive from n = {}, so it cannot serve as a nonpositive step; the inequalities are verified directly",
        first_positive_step_expression()
    ));
    rep
}

fn sum_closed_form(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("sum-closed-form", r.clone());
    for p in range(r.p) {
        let mut direct = Rational::zero();
        let mut previous: Option<Rational> = None;
        for big_n in 1..=r.n.1 {
            direct += alpha(big_n, p);
            if big_n < r.n.0 {
                continue;
            }
            let closed = sum_alpha(big_n, p);
            rep.record(Verdict::holds(closed == direct, show(&closed), show(&direct)), "closed-sum", || params([("N", big_n.into()), ("p", p.into())]));
            if let Some(prev) = previous.take() {
                let step = &closed - &prev;
                let a = alpha(big_n, p);
                rep.record(Verdict::holds(step == a, show(&step), show(&a)), "telescoping", || params([("N", big_n.into()), ("p", p.into())]));
            }
            previous = Some(closed);
        }
    }
    rep
}

fn sweep(name: &str, claim: &str, r: &Rectangle, n_min: u64, check: fn(u64, u64) -> Verdict) -> VerifyReport {
    let mut rep = VerifyReport::new(name, r.clone());
    for n in range(r.n).filter(|&n| n >= n_min) {
        for p in range(r.p) {
            rep.record(check(n, p), claim, || np(n, p));
        }
    }
    rep
}

fn i_equivalence(r: &Rectangle) -> VerifyReport {
    sweep("i-equivalence", "i-equivalence", r, 1, check_i_equivalence)
}

fn j_equivalence(r: &Rectangle) -> VerifyReport {
    sweep("j-equivalence", "j-equivalence", r, 1, check_j_equivalence)
}

fn k_equivalence(r: &Rectangle) -> VerifyReport {
    sweep("k-equivalence", "quadratic-criterion", r, 2, check_k_appendix_equivalence)
}

fn upper_lower_k(r: &Rectangle) -> VerifyReport {
    let mut rep = sweep("upper-lower-k", "three-region", r, 1, check_upper_lower_k);
    if let Some(n0) = smallest_n_with_nonnegative_roots(10_000) {
        rep.note(format!("both roots are nonnegative from n = {n0} on (found by scan)"));
    }
    rep
}

fn k_threshold(r: &Rectangle) -> VerifyReport {
    let mut rep = sweep("k-threshold", "below-k-implies-growth", r, 2, check_k_threshold);
    let mut converse_failures = 0u64;
    let mut first = None;
    for n in range(r.n).filter(|&n| n >= 2) {
        for p in range(r.p) {
            if check_k_threshold_converse(n, p).is_fail() {
                converse_failures += 1;
                first.get_or_insert((n, p));
            }
        }
    }
    if let Some((n, p)) = first {
        rep.note(format!(
            "converse (growth implies p <= K_n) fails at {converse_failures} points, first at n={n} p={p}; informational only"
        ));
    } else {
        rep.note("converse (growth implies p <= K_n) holds on the whole rectangle");
    }
    rep
}

fn k_order(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("k-order", r.clone());
    for n in range(r.n).filter(|&n| n >= 1) {
        rep.record(check_k_below_j(n), "k-below-j", || params([("n", n.into())]));
        rep.record(check_k_below_lower_root(n), "k-below-lower-root", || params([("n", n.into())]));
    }
    rep
}

fn difference_growth(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("difference-growth", r.clone());
    for n in range(r.n).filter(|&n| n >= 2) {
        let Some(k) = thresholds(n).k else { continue };
        let top = u64::try_from(k.floor().max(0.into())).unwrap_or(0).min(r.p.1);
        for p in r.p.0.max(1)..=top {
            rep.record(check_difference_growth(n, p), "difference-growth", || np(n, p));
        }
    }
    rep
}

fn uniform_estimate(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("uniform-estimate", r.clone());
    for p in r.p.0.max(1)..=r.p.1 {
        let bound = uniform_estimate_bound(p);
        for n in range(r.n).filter(|&n| n >= 1) {
            rep.record(check_uniform_p_estimate_with(n, p, &bound), "uniform-estimate", || np(n, p));
            rep.record(check_difference_below_first(n, p), "below-first-row", || np(n, p));
            rep.record(check_difference_power_decay(n, p), "power-decay", || np(n, p));
        }
    }
    rep
}

fn quotient_identity(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("quotient-identity", r.clone());
    let mut printed_mismatch = 0u64;
    for n in range(r.n).filter(|&n| n >= 1) {
        for p in range(r.p) {
            if n == 1 {
                if p >= 1 {
                    rep.record(check_quotient_anchor(p), "anchor-n1", || np(n, p));
                } else {
                    rep.record(Verdict::Skipped, "anchor-n1", || np(n, p));
                }
                continue;
            }
            let verdict = check_quotient_identity(n, p);
            if verdict.is_pass() && quotient_formula(n, p, true) != quotient_formula(n, p, false) {
                printed_mismatch += 1;
            }
            rep.record(verdict, "quotient-identity", || np(n, p));
        }
    }
    rep.note(format!(
        "identity holds with the factor (n+p+1); the variant with (n+p-1) disagrees at {printed_mismatch} checked points"
    ));
    rep
}

fn alpha0_difference(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("alpha0-difference", r.clone());
    for n in range(r.n).filter(|&n| n >= 1) {
        let d = check_alpha0_difference(n);
        rep.record(d.bound, "bounded-by-one", || params([("n", n.into())]));
        rep.record(d.identity, "stated-value", || params([("n", n.into())]));
    }
    rep.note("the exact difference is 2^-(n+1); the stated value 2^-(n+1)(2+n)/(n(1+n)) differs but both are <= 1");
    rep
}

fn majorant_suite(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("majorant", r.clone());
    let mut total = 0.0f64;
    for p in 0..=r.p.1 {
        let m = majorant(p);
        total += m;
        if p >= 1 {
            let cap = libm::pow(p as f64, -1.5);
            rep.record(Verdict::holds(m <= cap, format!("{m:.17e}"), format!("{cap:.17e}")), "below-power", || params([("p", p.into())]));
        }
    }
    rep.record(
        Verdict::holds(total <= MAJORANT_ENVELOPE, format!("{total:.17e}"), MAJORANT_ENVELOPE),
        "summable",
        || params([("P", r.p.1.into())]),
    );
    rep.note(format!("sum of M_p for p <= {} is {total:.12}", r.p.1));
    rep
}

fn sum_bound(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("sum-bound", r.clone());
    let big_p = r.p.1.max(1);
    let mut worst = 0.0f64;
    for n in range(r.n).filter(|&n| n >= 1) {
        let s = check_sum_coefficient_bound(n, big_p);
        worst = worst.max(n as f64 * (&s.partial + &s.tail).to_f64());
        rep.record(s.verdict, "sum-bound", || params([("n", n.into()), ("P_tail", big_p.into())]));
    }
    rep.note(format!("max of n * (partial sum + tail) is {worst:.6}, against 16.5"));
    rep
}

fn sean_lemma(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("sean-lemma", r.clone());
    for p in r.p.0.max(1)..=r.p.1 {
        let bound = central_binomial_bound(p);
        for n in range(r.n).filter(|&n| n >= 1) {
            rep.record(check_sean_lemma_with(n, p, &bound), "central-binomial", || np(n, p));
        }
    }
    rep
}

fn in_bound(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("in-bound", r.clone());
    for n in r.n.0.max(6)..=r.n.1 {
        let verdict = check_in_bound(n).expect("n >= 6");
        rep.record(verdict, "peak-bound", || params([("n", n.into())]));
    }
    rep
}

fn gamma(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("gamma", r.clone());
    for k in [1u64, 2, 4] {
        for n in range(r.n).filter(|&n| n >= 1) {
            for p in r.p.0.max(1)..=r.p.1 {
                if n * n > p * k {
                    continue;
                }
                let at = || params([("K", k.into()), ("n", n.into()), ("p", p.into())]);
                rep.record(check_gamma_k(n, p, k), "stated-lower-bound", at);
                rep.record(check_gamma_k_corrected(n, p, k), "corrected-lower-bound", at);
            }
        }
    }
    rep.note("the stated lower bound e^(-1/(2K)) is only supported for K = 1; e^(-K/2) holds throughout");
    rep
}

fn technical_lemma(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("technical-lemma", r.clone());
    let mut sums: BTreeMap<u64, Vec<Rational>> = BTreeMap::new();
    let n_top = r.n.1;
    for big_n in range(r.n).filter(|&n| n >= 1) {
        let m = big_n.sqrt();
        let s = sums.entry(m).or_insert_with(|| row_sums(m, n_top));
        for k in 0..=big_n {
            rep.record(check_technical_lemma_at(big_n, &s[k as usize]), "average-lower-bound", || {
                params([("N", big_n.into()), ("k", k.into())])
            });
        }
    }
    rep
}

fn s_monotone(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("s-monotone", r.clone());
    let mut sums: BTreeMap<u64, Vec<Rational>> = BTreeMap::new();
    let mut ties = 0u64;
    for big_n in range(r.n).filter(|&n| n >= 1) {
        let m = big_n.sqrt();
        let s = sums.entry(m).or_insert_with(|| row_sums(m, r.p.1 + 1));
        for k in range(r.p) {
            let (now, next) = (&s[k as usize], &s[k as usize + 1]);
            if now == next {
                ties += 1;
            }
            rep.record(Verdict::holds(next <= now, show(next), show(now)), "nonincreasing", || {
                params([("N", big_n.into()), ("k", k.into())])
            });
        }
    }
    rep.note(format!("equality S(k+1) = S(k) occurs at {ties} points"));
    rep
}

fn grid(points: u64, lo: f64, hi: f64, include_hi: bool) -> Vec<f64> {
    let steps = if include_hi { points.saturating_sub(1).max(1) } else { points.max(1) };
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / steps as f64)
        .collect()
}

fn corollaries(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("corollaries", r.clone());
    let points = r.x_points.unwrap_or(1024);
    let positive = grid(points, 0.0, 1.0, true);
    let negative = grid(points, -1.0, 0.0, false);
    let ns: Vec<u64> = range(r.n).filter(|&n| n >= 1).collect();
    let at = |n: u64, x: f64| params([("n", n.into()), ("x", Param::Real(x))]);

    for &n in &ns {
        for &x in &positive {
            rep.record(check_uniform_corollary(n, x), "uniform-difference", || at(n, x));
            let v = ((n + 1) as f64 * psi_eval(x, n + 1) - n as f64 * psi_eval(x, n)).abs();
            rep.record(Verdict::holds(v <= 17.5 + 1e-9, format!("{v:.17e}"), "17.5"), "weighted-difference", || at(n, x));
        }
    }

    // x < 0: partial sums; past I_n the terms alternate with decreasing size,
    // so the first omitted term bounds each tail
    const P_NEG: u64 = 5000;
    for &n in &ns {
        let low = alpha_row_f64(n, P_NEG as usize);
        let high = alpha_row_f64(n + 1, P_NEG as usize);
        let tail = (n + 1) as f64 * alternating_tail_bound(n + 1, P_NEG).unwrap_or(f64::INFINITY)
            + n as f64 * alternating_tail_bound(n, P_NEG).unwrap_or(f64::INFINITY);
        for &x in &negative {
            let horner = |row: &[f64]| row.iter().rev().fold(0.0, |acc, a| acc * x + a);
            let v = ((n + 1) as f64 * horner(&high) - n as f64 * horner(&low)).abs() + tail;
            rep.record(Verdict::holds(v <= 17.5 + 1e-9, format!("{v:.17e}"), "17.5"), "weighted-difference", || at(n, x));
        }
    }

    // the coefficient inequalities lifted to truncated series on [0, 1]
    const P_POS: usize = 500;
    let m_top = ns.iter().copied().max().unwrap_or(0).min(10);
    let n_top = ns.iter().copied().max().unwrap_or(0) + m_top + 1;
    let values: Vec<Vec<f64>> = (0..=n_top)
        .map(|n| {
            if n == 0 {
                return vec_of(positive.len(), 1.0);
            }
            let row = alpha_row_f64(n, P_POS);
            positive.iter().map(|&x| row.iter().rev().fold(0.0, |acc, a| acc * x + a)).collect()
        })
        .collect();
    let tail = |n: u64| alpha_tail_bound(n, P_POS as u64);
    for &n in &ns {
        for (i, &x) in positive.iter().enumerate() {
            let (s_n, s_n1) = (values[n as usize][i], values[n as usize + 1][i]);
            let tol = 1e-12 + tail(n) + tail(n + 1);
            let lhs = s_n1 / (n + 1) as f64;
            let rhs = s_n / n as f64;
            rep.record(Verdict::holds(lhs <= rhs + tol, format!("{lhs:.17e}"), format!("{rhs:.17e}")), "series-scaled-decrease", || at(n, x));
            for m in 1..=m_top {
                let joint = values[(m + n) as usize][i];
                let split = values[m as usize][i] + s_n;
                let tol = 1e-12 + tail(m + n) + tail(m) + tail(n);
                rep.record(Verdict::holds(joint <= split + tol, format!("{joint:.17e}"), format!("{split:.17e}")), "series-subadditive", || {
                    params([("m", m.into()), ("n", n.into()), ("x", Param::Real(x))])
                });
            }
        }
    }
    rep
}

fn vec_of(len: usize, v: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    out.resize(len, v);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert_eq!(
            run_suite("bogus", None).unwrap_err(),
            AnalysisError::UnknownSuite("bogus".into())
        );
    }

    #[test]
    fn names_accept_underscores() {
        assert_eq!(default_rectangle("sum_bound").unwrap().n, (1, 40));
        assert_eq!(normalize_suite_name("Upper_Lower_K"), "upper-lower-k");
    }

    #[test]
    fn groups_name_registered_leaves() {
        for s in SUITES {
            if let SuiteKind::Group(parts) = &s.kind {
                for part in parts.iter() {
                    let info = lookup(part).unwrap();
                    assert!(!info.is_group(), "{part}");
                }
            }
        }
        let leaves = SUITES.iter().filter(|s| !s.is_group()).count();
        let SuiteKind::Group(all) = &lookup("all").unwrap().kind else { panic!() };
        assert_eq!(all.len(), leaves);
    }

    #[test]
    fn small_rectangles_pass() {
        let rect = Rectangle::new((1, 6), (0, 20));
        for name in ["oracle", "shift", "monotonicity", "i-equivalence", "j-equivalence", "k-equivalence", "upper-lower-k"] {
            let rep = run_suite(name, Some(&rect)).unwrap();
            assert!(rep.passed(), "{name}: {:?}", rep.failures);
            assert!(rep.checks > 0);
        }
    }
}

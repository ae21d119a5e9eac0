use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::appendix::{appendix_example, appendix_matrix, appendix_s_closed_form, s_values};
use super::matrix::{DenseMatrix, Norm};
use super::random::{random_column_stochastic, random_doubly_stochastic, random_row_stochastic, rotation};
use super::series::{brunel_family, probe, BrunelOptions, Truncation};
use super::OperatorError;
use crate::analysis::{params, BoundConstants, Param, Params, Rectangle, Verdict, VerifyReport};

const SLACK: f64 = 1e-9;
/// Truncation for the domination check; truncated sums of nonnegative
/// terms are lower bounds, so any `P` is sound.
const DOMINATION_P: u64 = 2000;

fn tagged(tag: Option<u64>, rest: Params) -> Params {
    let mut out = rest;
    if let Some(t) = tag {
        out.insert(String::from("matrix"), Param::Int(t as i64));
    }
    out
}

/// Records `value - tail <= bound + slack`; returns whether `value + tail`
/// also fits, i.e. the point is certified regardless of truncation.
fn record_bound(rep: &mut VerifyReport, claim: &str, value: f64, tail: f64, bound: f64, at: impl FnOnce() -> Params) -> bool {
    let ok = value - tail <= bound + SLACK;
    rep.record(
        Verdict::holds(ok, format!("{value:.12e} (tail {tail:.3e})"), format!("{bound:.12e}")),
        claim,
        at,
    );
    value + tail <= bound + SLACK
}

fn mid(i: &crate::arith::Interval) -> f64 {
    i.midpoint_f64()
}

fn power_bound_into(rep: &mut VerifyReport, t: &DenseMatrix, n: (u64, u64), opts: &BrunelOptions, tag: Option<u64>) -> Result<(), OperatorError> {
    let fam = brunel_family(t, n.1, opts)?;
    let m = fam.probe.power_sup;
    let bound = 16.5 * m;
    let (mut certified, mut total) = (0, 0);
    for k in n.0.max(1)..=n.1 {
        let (a, tail) = fam.power(k);
        let at = || tagged(tag, params([("n", k.into())]));
        certified += record_bound(rep, "power-norm", a.norm(opts.norm), tail, bound, at) as u32;
        let (d, dtail) = fam.difference(k);
        let kf = k as f64;
        let at = || tagged(tag, params([("n", k.into())]));
        certified += record_bound(rep, "scaled-difference", kf * d.norm(opts.norm), kf * dtail, bound, at) as u32;
        total += 2;
    }
    rep.note(format!(
        "{}M = {m:.6}, P = {}, certified {certified}/{total}",
        tag.map(|t| format!("matrix {t}: ")).unwrap_or_default(),
        fam.truncation_p
    ));
    Ok(())
}

/// `‖A^n‖ <= 33M/2` and `n‖A^n - A^(n+1)‖ <= 33M/2` for `n <= n_max`, with
/// `M` the measured power bound.
pub fn check_power_bound_theorem(t: &DenseMatrix, n_max: u64, opts: &BrunelOptions) -> Result<VerifyReport, OperatorError> {
    let mut rep = VerifyReport::new("power-bound", Rectangle::new((1, n_max), (0, 0)));
    power_bound_into(&mut rep, t, (1, n_max), opts, None)?;
    rep.normalize();
    Ok(rep)
}

fn mean_bound_into(rep: &mut VerifyReport, t: &DenseMatrix, n: (u64, u64), opts: &BrunelOptions, tag: Option<u64>) -> Result<(), OperatorError> {
    let fam = brunel_family(t, n.1, opts)?;
    let m = fam.probe.mean_sup;
    if m > opts.growth_cutoff {
        return Err(OperatorError::NotMeanBounded { sup: m });
    }
    let consts = BoundConstants::get();
    let power_bound = m * mid(&consts.mean_to_power);
    let diff_bound = m * consts.c_meanbound.to_f64();
    let (mut certified, mut total) = (0, 0);
    for k in n.0.max(1)..=n.1 {
        let (a, tail) = fam.power(k);
        let at = || tagged(tag, params([("n", k.into())]));
        certified += record_bound(rep, "power-norm", a.norm(opts.norm), tail, power_bound, at) as u32;
        let (d, dtail) = fam.difference(k);
        let kf = k as f64;
        let at = || tagged(tag, params([("n", k.into())]));
        certified += record_bound(rep, "scaled-difference", kf * d.norm(opts.norm), kf * dtail, diff_bound, at) as u32;
        total += 2;
    }
    rep.note(format!(
        "{}M = {m:.6}, P = {}, certified {certified}/{total}",
        tag.map(|t| format!("matrix {t}: ")).unwrap_or_default(),
        fam.truncation_p
    ));
    Ok(())
}

/// `‖A^n‖ <= M(4√(6/π)+2)` and `n‖A^(n+1) - A^n‖ <= 99M/2`, with `M` the
/// measured bound on the Cesàro means.
pub fn check_mean_bound_theorem(t: &DenseMatrix, n_max: u64, opts: &BrunelOptions) -> Result<VerifyReport, OperatorError> {
    let mut rep = VerifyReport::new("mean-bound", Rectangle::new((1, n_max), (0, 0)));
    mean_bound_into(&mut rep, t, (1, n_max), opts, None)?;
    rep.normalize();
    Ok(rep)
}

fn domination_into(rep: &mut VerifyReport, t: &DenseMatrix, big_n: (u64, u64), opts: &BrunelOptions, tag: Option<u64>) -> Result<(), OperatorError> {
    if !t.is_nonnegative() {
        return Err(OperatorError::NegativeEntries);
    }
    let pr = probe(t, opts.norm, opts.probe_len, opts.growth_cutoff)?;
    if pr.mean_sup > opts.growth_cutoff {
        return Err(OperatorError::NotMeanBounded { sup: pr.mean_sup });
    }
    let n_max = big_n.1.max(1);
    let l_max = n_max.isqrt();
    let fixed = BrunelOptions {
        truncation: Truncation::Fixed(DOMINATION_P),
        averaging: 0,
        ..opts.clone()
    };
    let fam = brunel_family(t, l_max, &fixed)?;
    let mut brunel_sums = Vec::with_capacity(l_max as usize + 1);
    let mut running = DenseMatrix::zeros(t.dim());
    brunel_sums.push(running.clone());
    for l in 1..=l_max {
        running.add_scaled(fam.power(l).0, 1.0);
        brunel_sums.push(running.clone());
    }
    let c = BoundConstants::get().average_constant.lower_f64();
    let dim = t.dim();
    let mut power = t.clone();
    let mut cesaro_sum = DenseMatrix::zeros(dim);
    for n in 1..=n_max {
        cesaro_sum.add_scaled(&power, 1.0);
        power = &power * t;
        if n < big_n.0 {
            continue;
        }
        let root = n.isqrt();
        let lhs = cesaro_sum.scale(1.0 / n as f64);
        let rhs = brunel_sums[root as usize].scale(c / root as f64);
        for j in 0..dim {
            let (worst, gap) = (0..dim)
                .map(|i| (i, lhs.get(i, j) - rhs.get(i, j)))
                .fold((0, f64::NEG_INFINITY), |acc, v| if v.1 > acc.1 { v } else { acc });
            rep.record(
                Verdict::holds(gap <= SLACK, format!("{:.12e}", lhs.get(worst, j)), format!("{:.12e}", rhs.get(worst, j))),
                "entrywise-domination",
                || tagged(tag, params([("N", n.into()), ("column", (j as u64).into())])),
            );
        }
    }
    Ok(())
}

/// `(1/N) Σ_{n=1}^N T^n e_j <= (C/⌊√N⌋) Σ_{l<=⌊√N⌋} A^l e_j` entrywise for
/// every basis vector `e_j` and `N <= n_max`.
pub fn check_cesaro_domination(t: &DenseMatrix, n_max: u64, opts: &BrunelOptions) -> Result<VerifyReport, OperatorError> {
    let mut rep = VerifyReport::new("domination", Rectangle::new((1, n_max), (0, 0)));
    domination_into(&mut rep, t, (1, n_max), opts, None)?;
    rep.normalize();
    Ok(rep)
}

fn run_each(rep: &mut VerifyReport, matrices: &[DenseMatrix], mut each: impl FnMut(&mut VerifyReport, &DenseMatrix, u64) -> Result<(), OperatorError>) {
    for (i, t) in matrices.iter().enumerate() {
        if let Err(e) = each(rep, t, i as u64) {
            rep.record(
                Verdict::Fail {
                    lhs: format!("{e}"),
                    rhs: String::from("hypotheses hold"),
                },
                "probe",
                || params([("matrix", (i as u64).into())]),
            );
        }
    }
}

/// Reference matrices: identity, rotation by one radian, three seeded
/// doubly stochastic and one row-stochastic matrix.
pub fn power_bound_suite(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("power-bound", r.clone());
    let mut ms = alloc::vec![DenseMatrix::identity(3), rotation(1.0)];
    ms.extend((1..=3).map(|s| random_doubly_stochastic(5, s)));
    ms.push(random_row_stochastic(4, 7));
    let opts = BrunelOptions::default();
    run_each(&mut rep, &ms, |rep, t, i| power_bound_into(rep, t, r.n, &opts, Some(i)));
    rep
}

/// The appendix matrix, the identity and a seeded row-stochastic matrix.
pub fn mean_bound_suite(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("mean-bound", r.clone());
    let ms = [appendix_matrix(), DenseMatrix::identity(2), random_row_stochastic(4, 11)];
    let opts = BrunelOptions::default();
    run_each(&mut rep, &ms, |rep, t, i| mean_bound_into(rep, t, r.n, &opts, Some(i)));
    rep
}

/// Identity, zero, and ten seeded 3×3 stochastic matrices (row- and
/// column-stochastic alternately). The `n` range is the range of `N`.
pub fn domination_suite(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("domination", r.clone());
    let mut ms = alloc::vec![DenseMatrix::identity(3), DenseMatrix::zeros(3)];
    ms.extend((0..10).map(|s| {
        if s % 2 == 0 {
            random_row_stochastic(3, 100 + s)
        } else {
            random_column_stochastic(3, 100 + s)
        }
    }));
    let opts = BrunelOptions::default();
    run_each(&mut rep, &ms, |rep, t, i| domination_into(rep, t, r.n, &opts, Some(i)));
    rep
}

/// Largest `n` for the `n 2^(1-n) |S(n)|` trend.
const TREND_N: u64 = 60;
/// Range of `n` and `N` for the growth comparison.
const GROWTH_N: u64 = 500;

/// Series against closed form for `n` in range, plus the `S(n)` trend and the
/// growth of powers versus means of the appendix matrix.
pub fn appendix_suite(r: &Rectangle) -> VerifyReport {
    let mut rep = VerifyReport::new("appendix", r.clone());
    for n in r.n.0.max(1)..=r.n.1 {
        let ex = appendix_example(n);
        rep.record(
            Verdict::holds(ex.agreement <= 1e-8, format!("{:.3e}", ex.agreement), "1e-8"),
            "series-agreement",
            || params([("n", n.into())]),
        );
    }
    let limit = mid(&BoundConstants::get().appendix_limit) + 0.5;
    let mut best = (0u64, 0.0f64);
    for n in 1..=TREND_N.max(r.n.1) {
        let ex = s_values(n);
        let oracle = appendix_s_closed_form(n);
        let rel = (ex.0 - oracle).abs() / oracle.abs();
        rep.record(
            Verdict::holds(rel <= 1e-9, format!("{:.17e}", ex.0), format!("{oracle:.17e}")),
            "s-closed-form",
            || params([("n", n.into())]),
        );
        rep.record(
            Verdict::holds(ex.1 <= oracle && oracle <= ex.2, format!("{oracle:.17e}"), format!("[{:.6e}, {:.6e}]", ex.1, ex.2)),
            "s-bracket",
            || params([("n", n.into())]),
        );
        let scaled = n as f64 * libm::exp2(1.0 - n as f64) * ex.0.abs();
        if scaled > best.1 {
            best = (n, scaled);
        }
    }
    rep.record(
        Verdict::holds(best.1 <= limit, format!("{:.12}", best.1), format!("{limit:.12}")),
        "s-trend",
        || params([("n", Param::Int(best.0 as i64))]),
    );
    rep.note(format!("max n 2^(1-n) |S(n)| over n <= {} is {:.10} at n = {}", TREND_N.max(r.n.1), best.1, best.0));

    let t = appendix_matrix();
    let mut power = DenseMatrix::identity(2);
    for n in 1..=GROWTH_N {
        power = &power * &t;
        let v = power.norm(Norm::OpInf);
        rep.record(
            Verdict::holds(v == (2 * n + 1) as f64, format!("{v}"), format!("{}", 2 * n + 1)),
            "power-growth",
            || params([("n", n.into())]),
        );
    }
    let mut sum = DenseMatrix::zeros(2);
    let mut power = DenseMatrix::identity(2);
    for big_n in 1..=GROWTH_N {
        sum.add_scaled(&power, 1.0);
        power = &power * &t;
        let v = sum.norm(Norm::OpInf) / big_n as f64;
        rep.record(
            Verdict::holds(v <= 1.0 + 1e-12, format!("{v}"), "1"),
            "mean-bounded",
            || params([("N", big_n.into())]),
        );
    }
    rep
}

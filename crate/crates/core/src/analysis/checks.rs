use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, Zero};

use super::constants::{majorant, BoundConstants};
use super::thresholds::{f_n, k_constant, k_roots, thresholds};
use super::{AnalysisError, Verdict};
use crate::arith::{Interval, Rational};
use crate::coeffs::{alpha, shared_alpha_table, ScaledAlpha};

/// `α_p^(n)` from the shared memo, with `α^(0)` the coefficients of 1.
pub fn a(n: u64, p: u64) -> Rational {
    if n == 0 {
        return alpha(0, p);
    }
    shared_alpha_table().get(n, p)
}

/// `α_p^(n) - α_p^(n+1)`.
pub fn diff(n: u64, p: u64) -> Rational {
    a(n, p) - a(n + 1, p)
}

/// Short rendering for reports: exact when small, scientific otherwise.
pub fn show(r: &Rational) -> String {
    let exact = r.to_exact_string();
    if exact.len() <= 40 {
        exact
    } else {
        format!("{:.17e}", r.to_f64())
    }
}

pub fn check_i_equivalence(n: u64, p: u64) -> Verdict {
    let grows = a(n, p) <= a(n, p + 1);
    let below = Rational::from(p) <= thresholds(n).i;
    Verdict::holds(
        grows == below,
        format!("alpha(n,p) <= alpha(n,p+1) is {grows}"),
        format!("p <= I_n is {below}"),
    )
}

pub fn check_j_equivalence(n: u64, p: u64) -> Verdict {
    let shrinks = a(n, p) >= a(n + 1, p);
    let below = Rational::from(p) <= thresholds(n).j;
    Verdict::holds(
        shrinks == below,
        format!("alpha(n,p) >= alpha(n+1,p) is {shrinks}"),
        format!("p <= J_n is {below}"),
    )
}

/// Differences grow at `p` exactly when `12p(n²+n-1) - 12p² <= n⁴-2n³-13n²-10n`.
pub fn check_k_appendix_equivalence(n: u64, p: u64) -> Verdict {
    let grows = diff(n, p) <= diff(n, p + 1);
    let (ni, pi) = (n as i128, p as i128);
    let quad = 12 * pi * (ni * ni + ni - 1) - 12 * pi * pi <= k_constant(n);
    Verdict::holds(
        grows == quad,
        format!("diff(n,p) <= diff(n,p+1) is {grows}"),
        format!("quadratic criterion is {quad}"),
    )
}

/// `p <= K_n` implies the differences grow at `p`.
pub fn check_k_threshold(n: u64, p: u64) -> Verdict {
    let Some(k) = thresholds(n).k else {
        return Verdict::Skipped;
    };
    if Rational::from(p) > k {
        return Verdict::Skipped;
    }
    let (lhs, rhs) = (diff(n, p), diff(n, p + 1));
    Verdict::holds(lhs <= rhs, show(&lhs), show(&rhs))
}

/// Converse of [`check_k_threshold`]: growing differences imply `p <= K_n`.
pub fn check_k_threshold_converse(n: u64, p: u64) -> Verdict {
    let Some(k) = thresholds(n).k else {
        return Verdict::Skipped;
    };
    if diff(n, p) > diff(n, p + 1) {
        return Verdict::Skipped;
    }
    let pr = Rational::from(p);
    Verdict::holds(pr <= k, show(&pr), show(&k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KRegion {
    BelowLower,
    Between,
    AboveUpper,
    /// Within `1e-9` of a root.
    NearRoot,
}

/// Places `p` relative to the two roots; `None` when they are not both
/// nonnegative.
pub fn classify_k_region(n: u64, p: u64) -> Option<KRegion> {
    let (lower, upper) = k_roots(n)?;
    let tol = Rational::new(1, 1_000_000_000);
    let pr = Rational::from(p);
    let near = |root: &Interval| &(root.lo() - &tol) <= &pr && pr <= root.hi() + &tol;
    Some(if near(&lower) || near(&upper) {
        KRegion::NearRoot
    } else if &pr < lower.lo() {
        KRegion::BelowLower
    } else if &pr < upper.lo() {
        KRegion::Between
    } else {
        KRegion::AboveUpper
    })
}

/// Differences grow below the lower root and above the upper root and
/// shrink strictly between them.
pub fn check_upper_lower_k(n: u64, p: u64) -> Verdict {
    let Some(region) = classify_k_region(n, p) else {
        return Verdict::Skipped;
    };
    let grows = diff(n, p) <= diff(n, p + 1);
    let predicted = match region {
        KRegion::NearRoot => return Verdict::Indeterminate,
        KRegion::BelowLower | KRegion::AboveUpper => true,
        KRegion::Between => false,
    };
    Verdict::holds(
        grows == predicted,
        format!("differences grow: {grows}"),
        format!("{region:?}"),
    )
}

/// The closed form of `(α_p^(n) - α_p^(n+1)) / (α_p^(n-1) - α_p^(n))`:
/// `(n²+n-2p)(n+2p-1) / (2(n+p+s)(n(n-1)-2p))` with `s = +1`, or with
/// `s = -1` when `printed` is set.
pub fn quotient_formula(n: u64, p: u64, printed: bool) -> Option<Rational> {
    let (ni, pi) = (n as i128, p as i128);
    let guard = ni * (ni - 1) - 2 * pi;
    let shift = if printed { -1 } else { 1 };
    let den = 2 * (ni + pi + shift) * guard;
    (den != 0).then(|| Rational::new((ni * ni + ni - 2 * pi) * (ni + 2 * pi - 1), den))
}

pub fn check_quotient_identity(n: u64, p: u64) -> Verdict {
    let Some(formula) = quotient_formula(n, p, false) else {
        return Verdict::Skipped;
    };
    let den = a(n - 1, p) - a(n, p);
    if den.is_zero() {
        return Verdict::Skipped;
    }
    let quotient = (a(n, p) - a(n + 1, p)) / den;
    Verdict::holds(quotient == formula, show(&quotient), show(&formula))
}

/// The `n = 1` special case `(p-1)/(p+2)`, using `α^(0) = 1`.
pub fn check_quotient_anchor(p: u64) -> Verdict {
    let den = a(0, p) - a(1, p);
    let quotient = (a(1, p) - a(2, p)) / den;
    let anchor = Rational::new(p as i64 - 1, p as i64 + 2);
    Verdict::holds(quotient == anchor, show(&quotient), show(&anchor))
}

/// Lower end of `e^(1/(24p)) / (2(1+p)√(πp))`.
pub fn uniform_estimate_bound(p: u64) -> Rational {
    assert!(p >= 1);
    let e = Interval::exp(&Rational::new(1, 24 * p as i64));
    let root = (&Interval::pi() * &Interval::point(Rational::from(p))).sqrt();
    let den = &Interval::point(Rational::from(2 * (1 + p))) * &root;
    (&e / &den).lo().clone()
}

pub fn check_uniform_p_estimate(n: u64, p: u64) -> Verdict {
    check_uniform_p_estimate_with(n, p, &uniform_estimate_bound(p))
}

pub(crate) fn check_uniform_p_estimate_with(n: u64, p: u64, bound: &Rational) -> Verdict {
    let delta = (a(n + 1, p) - a(n, p)).abs();
    Verdict::holds(&delta <= bound, show(&delta), show(bound))
}

/// `|α_p^(n+1) - α_p^(n)| <= α_p^(1)`.
pub fn check_difference_below_first(n: u64, p: u64) -> Verdict {
    let delta = (a(n + 1, p) - a(n, p)).abs();
    let first = a(1, p);
    Verdict::holds(delta <= first, show(&delta), show(&first))
}

/// `|α_p^(n+1) - α_p^(n)| <= p^(-3/2)`, compared as `Δ² p³ <= 1`.
pub fn check_difference_power_decay(n: u64, p: u64) -> Verdict {
    assert!(p >= 1);
    let delta = (a(n + 1, p) - a(n, p)).abs();
    let scaled = &delta * &delta * Rational::from(p).pow(3);
    Verdict::holds(
        scaled <= Rational::from(1),
        show(&delta),
        format!("{:.17e}", libm::pow(p as f64, -1.5)),
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct Alpha0Difference {
    pub exact: Rational,
    pub stated: Rational,
    /// `exact == stated`
    pub identity: Verdict,
    /// `stated <= 1` and `exact <= 1`
    pub bound: Verdict,
}

/// `|α_0^(n+1) - α_0^(n)|` against the closed value `2^-(n+1)(2+n)/(n(1+n))`.
pub fn check_alpha0_difference(n: u64) -> Alpha0Difference {
    let exact = (a(n + 1, 0) - a(n, 0)).abs();
    let stated = crate::arith::pow2(-(n as i64 + 1)) * Rational::new(2 + n, n * (1 + n));
    let one = Rational::from(1);
    Alpha0Difference {
        identity: Verdict::holds(exact == stated, show(&exact), show(&stated)),
        bound: Verdict::holds(
            exact <= one && stated <= one,
            format!("{} and {}", show(&exact), show(&stated)),
            "1",
        ),
        exact,
        stated,
    }
}

/// `Σ_{p=0}^P M_p`.
pub fn check_majorant_summability(big_p: u64) -> f64 {
    (0..=big_p).map(majorant).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SumBound {
    pub partial: Rational,
    pub tail: Rational,
    pub bound: Rational,
    pub verdict: Verdict,
}

/// `Σ_{p<=P} |α_p^(n+1) - α_p^(n)|`, exactly.
pub fn difference_partial_sum(n: u64, big_p: u64) -> Rational {
    // common denominator 2^(n+1+2P); the p-th term is E_p / 2^(n+1+2p)
    let mut acc = BigInt::zero();
    let lower = ScaledAlpha::new(n);
    let upper = ScaledAlpha::new(n + 1);
    for (d_n, d_n1) in lower.zip(upper).take(big_p as usize + 1) {
        let e: BigInt = BigInt::from(d_n1) - (BigInt::from(d_n) << 1);
        acc = (acc << 2) + e.abs();
    }
    Rational::dyadic(acc, n + 1 + 2 * big_p)
}

/// Partial sum plus the tail envelope `2/√P` against `33/(2n)`.
pub fn check_sum_coefficient_bound(n: u64, big_p: u64) -> SumBound {
    assert!(big_p >= 1);
    let partial = difference_partial_sum(n, big_p);
    let root = Interval::sqrt_of(&Rational::from(big_p));
    let tail = Rational::from(2) / root.lo();
    let bound = &BoundConstants::get().c_sum / Rational::from(n);
    let total = &partial + &tail;
    SumBound {
        verdict: Verdict::holds(total <= bound, show(&total), show(&bound)),
        partial,
        tail,
        bound,
    }
}

/// Lower end of `e^(1/12)/√(πp)`.
pub fn central_binomial_bound(p: u64) -> Rational {
    let root = (&Interval::pi() * &Interval::point(Rational::from(p))).sqrt();
    (&BoundConstants::get().stirling_slack / &root).lo().clone()
}

/// `2^(-n-2p) C(n+2p, p) <= e^(1/12)/√(πp)`.
pub fn check_sean_lemma(n: u64, p: u64) -> Verdict {
    check_sean_lemma_with(n, p, &central_binomial_bound(p))
}

pub(crate) fn check_sean_lemma_with(n: u64, p: u64, bound: &Rational) -> Verdict {
    assert!(n >= 1 && p >= 1);
    // 2^(-n-2p) C(n+2p, p) = α_p^(n) (n+2p)/n
    let lhs = a(n, p) * Rational::new(n + 2 * p, n);
    Verdict::holds(&lhs <= bound, show(&lhs), show(bound))
}

/// `α_m^(n) <= M/m` at `m = ⌊I_n⌋`, `M = 6√(2/π)e^(1/12)`.
pub fn check_in_bound(n: u64) -> Result<Verdict, AnalysisError> {
    if n < 6 {
        return Err(AnalysisError::Domain {
            what: "check_in_bound",
            requirement: "n >= 6",
        });
    }
    let m = thresholds(n).i.floor();
    let m = u64::try_from(m).expect("floor of I_n is positive for n >= 6");
    let lhs = a(n, m) * Rational::from(m);
    let bound = BoundConstants::get().peak_constant.lo().clone();
    Ok(Verdict::holds(lhs <= bound, show(&lhs), show(&bound)))
}

/// `c(n,p) = (1+n/2p)^(2p+n) / (1+n/p)^(n+p)`, in log space.
pub fn c_np(n: u64, p: u64) -> f64 {
    assert!(p >= 1);
    let (nf, pf) = (n as f64, p as f64);
    let log = (2.0 * pf + nf) * libm::log1p(nf / (2.0 * pf)) - (nf + pf) * libm::log1p(nf / pf);
    libm::exp(log)
}

const GAMMA_SLACK: f64 = 1e-12;

fn check_gamma_with(n: u64, p: u64, k: u64, gamma: f64) -> Verdict {
    if n * n > p * k {
        return Verdict::Skipped;
    }
    let c = c_np(n, p);
    let ok = gamma * (1.0 - GAMMA_SLACK) <= c && c <= 1.0 + GAMMA_SLACK;
    Verdict::holds(ok, format!("{c:.17e}"), format!("[{gamma:.17e}, 1]"))
}

/// `e^(-1/(2K)) <= c(n,p) <= 1` on `n² <= pK`.
pub fn check_gamma_k(n: u64, p: u64, k: u64) -> Verdict {
    check_gamma_with(n, p, k, libm::exp(-1.0 / (2.0 * k as f64)))
}

/// `e^(-K/2) <= c(n,p) <= 1` on `n² <= pK`, the lower bound that the
/// log-space expansion of `c(n,p)` actually supports.
pub fn check_gamma_k_corrected(n: u64, p: u64, k: u64) -> Verdict {
    check_gamma_with(n, p, k, libm::exp(-(k as f64) / 2.0))
}

/// `S_m(k) = Σ_{j=1}^m α_k^(j)` for `k = 0..=k_max`.
pub fn row_sums(m: u64, k_max: u64) -> Vec<Rational> {
    (0..=k_max)
        .map(|k| (1..=m).map(|j| a(j, k)).sum())
        .collect()
}

/// `1/N <= C/m · S_m(k)` at a single `k`, with `m = ⌊√N⌋`.
pub fn check_technical_lemma_at(big_n: u64, s: &Rational) -> Verdict {
    let m = big_n.sqrt();
    let c = BoundConstants::get().average_constant.lo();
    let rhs = c * s / Rational::from(m);
    let lhs = Rational::new(1, big_n);
    Verdict::holds(lhs <= rhs, show(&lhs), show(&rhs))
}

/// [`check_technical_lemma_at`] for every `k` in `0..=N`.
pub fn check_technical_lemma(big_n: u64) -> Verdict {
    let sums = row_sums(big_n.sqrt(), big_n);
    sums.iter()
        .map(|s| check_technical_lemma_at(big_n, s))
        .find(Verdict::is_fail)
        .unwrap_or(Verdict::Pass)
}

/// `S(k+1) <= S(k)` for `S(k) = Σ_{n=1}^{⌊√N⌋} α_k^(n)`. The flag reports
/// equality.
pub fn check_s_monotone(big_n: u64, k: u64) -> (Verdict, bool) {
    let m = big_n.sqrt();
    let s = |k| -> Rational { (1..=m).map(|j| a(j, k)).sum() };
    let (now, next) = (s(k), s(k + 1));
    (Verdict::holds(next <= now, show(&next), show(&now)), next == now)
}

/// `|α_p^(n+1) - α_p^(n)| <= |α_{p+1}^(n+1) - α_{p+1}^(n)|` for
/// `1 <= p <= ⌊K_n⌋`.
pub fn check_difference_growth(n: u64, p: u64) -> Verdict {
    let Some(k) = thresholds(n).k else {
        return Verdict::Skipped;
    };
    if p < 1 || Rational::from(p) > k {
        return Verdict::Skipped;
    }
    let now = diff(n, p).abs();
    let next = diff(n, p + 1).abs();
    Verdict::holds(now <= next, show(&now), show(&next))
}

/// The three exact monotonicity claims at `(n, m, p)`:
/// `α^(n+1)/(n+1) <= α^(n)/n`, `(n+1)α^(n) - nα^(n+1) >= 0`,
/// `α^(m+n) <= α^(m) + α^(n)`.
pub fn check_monotonicity(n: u64, m: u64, p: u64) -> [Verdict; 3] {
    let (an, an1) = (a(n, p), a(n + 1, p));
    let scaled_next = &an1 / Rational::from(n + 1);
    let scaled = &an / Rational::from(n);
    let weighted = Rational::from(n + 1) * &an - Rational::from(n) * &an1;
    let joint = a(m + n, p);
    let split = a(m, p) + &an;
    [
        Verdict::holds(scaled_next <= scaled, show(&scaled_next), show(&scaled)),
        Verdict::holds(!weighted.is_negative(), show(&weighted), "0"),
        Verdict::holds(joint <= split, show(&joint), show(&split)),
    ]
}

/// `K_n <= J_n`, exactly.
pub fn check_k_below_j(n: u64) -> Verdict {
    let t = thresholds(n);
    let Some(k) = t.k else {
        return Verdict::Skipped;
    };
    Verdict::holds(k <= t.j, show(&k), show(&t.j))
}

/// `K_n <= K̲_n` within `1e-9` when the roots exist.
pub fn check_k_below_lower_root(n: u64) -> Verdict {
    let (Some(k), Some((lower, _))) = (thresholds(n).k, k_roots(n)) else {
        return Verdict::Skipped;
    };
    let tol = Rational::new(1, 1_000_000_000);
    Verdict::holds(&k <= &(lower.lo() + &tol), show(&k), show(lower.lo()))
}

/// `argmax_p (α_p^(n) - α_p^(n+1))` over `0..=p_max`, first on ties.
pub fn difference_argmax(n: u64, p_max: u64) -> u64 {
    let mut best = 0;
    let mut best_val = diff(n, 0);
    for p in 1..=p_max {
        let v = diff(n, p);
        if v > best_val {
            best = p;
            best_val = v;
        }
    }
    best
}

/// `n |ψ^(n+1)(x) - ψ^n(x)| <= 33/2`.
pub fn check_uniform_corollary(n: u64, x: f64) -> Verdict {
    let v = n as f64 * (crate::coeffs::psi_eval(x, n + 1) - crate::coeffs::psi_eval(x, n)).abs();
    Verdict::holds(v <= 16.5 + 1e-9, format!("{v:.17e}"), "16.5")
}

/// Sign of the quadratic `f_n` at `p`, re-exported for reports.
pub fn quadratic_at(n: u64, p: u64) -> i128 {
    f_n(n, p)
}

/// Sign changes of the proof-step expression `n² - 3n - 2`: the first `n`
/// where it is positive.
pub fn first_positive_step_expression() -> u64 {
    (1..).find(|&n: &u64| (n * n) as i64 - 3 * n as i64 - 2 > 0).unwrap()
}

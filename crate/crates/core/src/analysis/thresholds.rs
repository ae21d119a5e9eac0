use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{Interval, Rational};

/// Monotonicity thresholds in `p` for a fixed power `n`.
///
/// `alpha(n, p) <= alpha(n, p+1)` iff `p <= I`; `alpha(n+1, p) <= alpha(n, p)`
/// iff `p <= J`; `K`, `k_lower`, `k_upper` govern the successive differences.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Thresholds {
    pub n: u64,
    pub i: Rational,
    pub j: Rational,
    /// Undefined at `n = 1`, where its denominator vanishes.
    pub k: Option<Rational>,
    pub k_lower: Option<f64>,
    pub k_upper: Option<f64>,
}

pub fn thresholds(n: u64) -> Thresholds {
    assert!(n >= 1);
    let ni = n as i128;
    let k_den = 12 * ni * ni + 12 * ni - 24;
    let roots = k_roots(n);
    Thresholds {
        n,
        i: Rational::new(ni * ni - 3 * ni - 4, 6),
        j: Rational::new(ni * ni + ni, 2),
        k: (k_den != 0).then(|| Rational::new(k_constant(n), k_den)),
        k_lower: roots.as_ref().map(|(lo, _)| lo.midpoint_f64()),
        k_upper: roots.as_ref().map(|(_, hi)| hi.midpoint_f64()),
    }
}

/// `n⁴ - 2n³ - 13n² - 10n = n(n+1)(n+2)(n-5)`.
pub fn k_constant(n: u64) -> i128 {
    let n = n as i128;
    n * (n + 1) * (n + 2) * (n - 5)
}

/// `f_n(p) = -12p² + 12(n²+n-1)p - (n⁴-2n³-13n²-10n)`; its sign decides
/// whether the differences grow (`f_n(p) <= 0`) or shrink at `p`.
pub fn f_n(n: u64, p: u64) -> i128 {
    let (ni, pi) = (n as i128, p as i128);
    -12 * pi * pi + 12 * (ni * ni + ni - 1) * pi - k_constant(n)
}

/// True when both roots of `f_n` are real and nonnegative.
pub fn has_nonnegative_roots(n: u64) -> bool {
    let ni = n as i128;
    let b = 12 * (ni * ni + ni - 1);
    let c = k_constant(n);
    // roots sum to b/12 and multiply to c/12
    b * b - 48 * c >= 0 && c >= 0 && b >= 0
}

/// Outward enclosures of the two roots `(K̲_n, K̄_n)` when both are nonnegative.
pub fn k_roots(n: u64) -> Option<(Interval, Interval)> {
    if !has_nonnegative_roots(n) {
        return None;
    }
    let ni = n as i128;
    let b = Rational::from_integer(BigInt::from(12 * (ni * ni + ni - 1)));
    let disc = {
        let bb = 12 * (ni * ni + ni - 1);
        bb * bb - 48 * k_constant(n)
    };
    let root = Interval::sqrt_of(&Rational::from_integer(BigInt::from(disc)));
    let inv24 = Rational::new(1, 24);
    let lower = Interval::new(
        (&b - root.hi()) * &inv24,
        (&b - root.lo()) * &inv24,
    );
    let upper = Interval::new(
        (&b + root.lo()) * &inv24,
        (&b + root.hi()) * &inv24,
    );
    Some((lower, upper))
}

/// First `n` in `1..=limit` whose quadratic has two nonnegative roots.
pub fn smallest_n_with_nonnegative_roots(limit: u64) -> Option<u64> {
    (1..=limit).find(|&n| has_nonnegative_roots(n))
}

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use serde::Serialize;

use super::matrix::DenseMatrix;
use super::series::{brunel, BrunelOptions, Truncation};
use crate::arith::Rational;

/// Differences used by the Euler transform of the tail of `S(n)`.
const EULER_TERMS: usize = 200;
/// Truncation and averaging rounds for the series evaluation of `A^n(T)`.
const SERIES_P: u64 = 2000;
const SERIES_AVERAGING: u32 = 6;

/// `[[-1, 2], [0, -1]]`: mean-bounded, not power-bounded.
pub fn appendix_matrix() -> DenseMatrix {
    DenseMatrix::new(2, vec![-1.0, 2.0, 0.0, -1.0]).unwrap()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AppendixExample {
    pub n: u64,
    /// `[[(√2-1)^n, -2^(1-n) n S(n)], [0, (√2-1)^n]]`.
    pub closed_form: DenseMatrix,
    #[serde(rename = "S_n")]
    pub s_n: f64,
    /// `S(n)` lies between the partial sums through `J_n` and `J_n + 1`.
    pub s_bracket: (f64, f64),
    /// `A^n(T)` summed from the coefficient series.
    pub series_matrix: DenseMatrix,
    pub series_tail_bound: f64,
    /// Largest entrywise gap between the two matrices.
    pub agreement: f64,
}

/// `C(n+2p-1, p-1)` for `p = 1, 2, …`.
struct Binomials {
    n: u64,
    p: u64,
    current: BigInt,
}

impl Iterator for Binomials {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let out = self.current.clone();
        let (n, p) = (self.n, self.p);
        self.current = &self.current * BigInt::from((n + 2 * p + 1) * (n + 2 * p)) / BigInt::from(p * (n + p + 1));
        self.p += 1;
        Some(out)
    }
}

fn binomials(n: u64) -> Binomials {
    Binomials {
        n,
        p: 1,
        current: BigInt::from(1),
    }
}

/// `S(n) = Σ_p (-1/4)^p C(n+2p-1, p-1)`: the exact partial sum through
/// `J_n`, after which the terms shrink, the next partial sum, and a value
/// with the remainder summed by an exact Euler transform.
fn s_series(n: u64) -> (Rational, Rational, Rational) {
    let j = (n * n + n) / 2;
    let mut terms = binomials(n);
    let mut acc = BigInt::from(0);
    for p in 1..=j {
        let b = terms.next().unwrap();
        acc = (acc << 2) + if p % 2 == 1 { -b } else { b };
    }
    let partial = Rational::dyadic(acc, 2 * j);
    let rest: Vec<BigInt> = terms.take(EULER_TERMS + 1).collect();
    let first_sign: i64 = if (j + 1) % 2 == 1 { -1 } else { 1 };
    let next = &partial + Rational::dyadic(rest[0].clone() * first_sign, 2 * (j + 1));

    // u_k = rest[k] / 4^(j+1+k); scaled to integers U_k = rest[k] 4^(K-k)
    let big_k = EULER_TERMS;
    let mut diffs: Vec<BigInt> = rest
        .iter()
        .enumerate()
        .map(|(k, b)| b << (2 * (big_k - k)))
        .collect();
    // Σ (-1)^k u_k = Σ_m (-1)^m Δ^m u_0 / 2^(m+1)
    let mut euler = BigInt::from(0);
    for m in 0..=big_k {
        let term = &diffs[0] << (big_k - m);
        euler += if m % 2 == 0 { term } else { -term };
        for i in 0..diffs.len() - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
        diffs.pop();
    }
    let tail = Rational::dyadic(euler * first_sign, 2 * (j as usize + 1 + big_k) as u64 + big_k as u64 + 1);
    let estimate = &partial + tail;
    (partial, next, estimate)
}

/// `-2^(n-1) (√2-1)^(n+1) / √2`, the value `S(n)` must take for the
/// off-diagonal entry to equal `n ψ(-1)^(n-1) ψ'(-1) · 2`.
pub fn appendix_s_closed_form(n: u64) -> f64 {
    let r = core::f64::consts::SQRT_2 - 1.0;
    -libm::exp2(n as f64 - 1.0) * crate::coeffs::powi(r, n + 1) / core::f64::consts::SQRT_2
}

pub fn appendix_example(n: u64) -> AppendixExample {
    assert!(n >= 1, "appendix_example needs n >= 1");
    let (partial, next, estimate) = s_series(n);
    let s_n = estimate.to_f64();
    let (a, b) = (partial.to_f64(), next.to_f64());
    let diag = crate::coeffs::powi(core::f64::consts::SQRT_2 - 1.0, n);
    let off = -libm::exp2(1.0 - n as f64) * n as f64 * s_n;
    let closed_form = DenseMatrix::new(2, vec![diag, off, 0.0, diag]).unwrap();
    let opts = BrunelOptions {
        truncation: Truncation::Fixed(SERIES_P),
        averaging: SERIES_AVERAGING,
        ..BrunelOptions::default()
    };
    let series = brunel(&appendix_matrix(), n, &opts).expect("appendix matrix passes the probe");
    AppendixExample {
        n,
        agreement: series.matrix.max_abs_diff(&closed_form),
        closed_form,
        s_n,
        s_bracket: (a.min(b), a.max(b)),
        series_matrix: series.matrix,
        series_tail_bound: series.tail_bound,
    }
}

/// `S(n)` and the two partial sums bracketing it, as doubles.
pub(crate) fn s_values(n: u64) -> (f64, f64, f64) {
    let (partial, next, estimate) = s_series(n);
    let (a, b) = (partial.to_f64(), next.to_f64());
    (estimate.to_f64(), a.min(b), a.max(b))
}

//! Taylor coefficients of `ξ(x)^n` and `ψ(x)^n`, where `ξ(x) = 1 - √(1-x)`
//! and `ψ(x) = ξ(x)/x`.
//!
//! `beta(n, p)` is the `x^p` coefficient of `ξ^n`, `alpha(n, p)` that of
//! `ψ^n`. Both are dyadic rationals. `n = 0` follows `ψ^0 = ξ^0 = 1`.

mod table;

pub use table::{shared_alpha_table, CoeffKind, CoeffTable};

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::{binomial, pow2, Rational};

/// `α_p^(n) = n/(n+p) · 2^(-n-2p) · C(n+2p-1, p)`.
pub fn alpha(n: u64, p: u64) -> Rational {
    Rational::dyadic(alpha_scaled(n, p), n + 2 * p)
}

/// The integer `α_p^(n) · 2^(n+2p)`.
pub fn alpha_scaled(n: u64, p: u64) -> BigUint {
    if n == 0 {
        return if p == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(n + 2 * p - 1, p as i64) * n / (n + p)
}

/// `β_p^(n)`: zero below `p = n`, else `(n/2p) · 2^(n+1-2p) · C(2p-n-1, p-1)`.
pub fn beta(n: u64, p: u64) -> Rational {
    if n == 0 {
        return if p == 0 { Rational::one() } else { Rational::zero() };
    }
    if p < n {
        return Rational::zero();
    }
    let c = binomial(2 * p - n - 1, p as i64 - 1);
    Rational::new(c * n, 2 * p) * pow2(n as i64 + 1 - 2 * p as i64)
}

/// `α_{p+1}^(n) / α_p^(n) = (n+2p+1)(n+2p) / (4(p+1)(n+p+1))`.
pub fn alpha_ratio(n: u64, p: u64) -> Rational {
    let (n, p) = (n as u128, p as u128);
    Rational::new(
        (n + 2 * p + 1) * (n + 2 * p),
        4 * (p + 1) * (n + p + 1),
    )
}

/// `α_p^(n+1) = 2α_{p+1}^(n) - α_{p+1}^(n-1)`, checked exactly.
pub fn alpha_recurrence_check(n: u64, p: u64) -> bool {
    assert!(n >= 2, "recurrence needs n >= 2");
    alpha(n + 1, p) == Rational::from(2) * alpha(n, p + 1) - alpha(n - 1, p + 1)
}

/// `β_p^(N+1) = 2β_p^(N) - β_{p-1}^(N-1)`, checked exactly.
pub fn beta_recurrence_check(big_n: u64, p: u64) -> bool {
    assert!(big_n >= 2, "recurrence needs N >= 2");
    let shifted = if p == 0 {
        Rational::zero()
    } else {
        beta(big_n - 1, p - 1)
    };
    beta(big_n + 1, p) == Rational::from(2) * beta(big_n, p) - shifted
}

/// `Σ_{n=1}^N α_p^(n) = 2^-(N+2p) [2^N C(2p,p) - C(N+2p,p)]`.
pub fn sum_alpha(big_n: u64, p: u64) -> Rational {
    assert!(big_n >= 1);
    let lead = binomial(2 * p, p as i64) << big_n as usize;
    let numer = num_bigint::BigInt::from(lead) - num_bigint::BigInt::from(binomial(big_n + 2 * p, p as i64));
    Rational::dyadic(numer, big_n + 2 * p)
}

/// Truncated power series with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPoly {
    coeffs: Vec<Rational>,
}

impl SeriesPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        SeriesPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Product truncated at this series' degree.
    pub fn mul_truncated(&self, other: &SeriesPoly) -> SeriesPoly {
        let deg = self.degree();
        let mut out = vec![Rational::zero(); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(deg + 1 - i) {
                out[i + j] += a * b;
            }
        }
        SeriesPoly { coeffs: out }
    }

    /// Divides by `x^k`, dropping the (necessarily zero) low coefficients.
    pub fn shift_down(&self, k: usize) -> SeriesPoly {
        debug_assert!(self.coeffs[..k.min(self.coeffs.len())].iter().all(Rational::is_zero));
        SeriesPoly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }
}

/// Coefficients `0..=p_max` of `ψ^n`, built from the binomial series of
/// `(1-x)^(1/2)` by repeated convolution. Independent of the closed forms.
pub fn oracle_alpha(n: u64, p_max: u64) -> SeriesPoly {
    assert!(n >= 1);
    let deg = (p_max + n) as usize;
    // C(1/2, p) by its ratio, then xi_p = -(-1)^p C(1/2, p) for p >= 1
    let half = Rational::new(1, 2);
    let mut binom = Rational::one();
    let mut xi = vec![Rational::zero(); deg + 1];
    for p in 1..=deg {
        binom = binom * (&half - Rational::from(p as u64 - 1)) / Rational::from(p as u64);
        xi[p] = if p % 2 == 0 { -binom.clone() } else { binom.clone() };
    }
    let xi = SeriesPoly::new(xi);
    let mut power = xi.clone();
    for _ in 1..n {
        power = power.mul_truncated(&xi);
    }
    power.shift_down(n as usize)
}

/// `ψ(x)^n` in floating point, via `1/(1+√(1-x))` which has no cancellation.
pub fn psi_eval(x: f64, n: u64) -> f64 {
    if !(-1.0..=1.0).contains(&x) {
        return f64::NAN;
    }
    let psi = 1.0 / (1.0 + libm::sqrt(1.0 - x));
    powi(psi, n)
}

pub(crate) fn powi(base: f64, exp: u64) -> f64 {
    let mut out = 1.0;
    let mut b = base;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            out *= b;
        }
        b *= b;
        e >>= 1;
    }
    out
}

/// `Σ_{p=0}^P α_p^(n) x^p` in floating point (Horner).
pub fn psi_partial_sum(x: f64, n: u64, big_p: u64) -> f64 {
    alpha_row_f64(n, big_p as usize)
        .iter()
        .rev()
        .fold(0.0, |acc, a| acc * x + a)
}

/// `α_0^(n), …, α_P^(n)` as doubles via the ratio recurrence.
pub fn alpha_row_f64(n: u64, big_p: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(big_p + 1);
    let mut a = libm::exp2(-(n as f64));
    let nf = n as f64;
    for p in 0..=big_p {
        row.push(a);
        let pf = p as f64;
        a *= (nf + 2.0 * pf + 1.0) * (nf + 2.0 * pf) / (4.0 * (pf + 1.0) * (nf + pf + 1.0));
    }
    row
}

/// Upper bound for `Σ_{p>P} α_p^(n)`, namely `n e^(1/12) / √(πP)` capped at 1.
pub fn alpha_tail_bound(n: u64, big_p: u64) -> f64 {
    if big_p == 0 {
        return 1.0;
    }
    let raw = n as f64 * E_TWELFTH_UP / libm::sqrt(core::f64::consts::PI * big_p as f64);
    (raw * (1.0 + 1e-12)).min(1.0)
}

/// For `x` in `[-1, 0]`: once `P+1 > I_n` the terms of the series alternate
/// with decreasing size, so `|Σ_{p>P} α_p^(n) x^p| <= α_{P+1}^(n)`. `None`
/// while the coefficients are still growing.
pub fn alternating_tail_bound(n: u64, big_p: u64) -> Option<f64> {
    let (ni, next) = (n as i128, big_p as i128 + 1);
    if 6 * next <= ni * ni - 3 * ni - 4 {
        return None;
    }
    Some(crate::arith::f64_above(&alpha(n, big_p + 1)))
}

/// A double at or above `e^(1/12)`.
pub(crate) const E_TWELFTH_UP: f64 = 1.0869040495212296;

/// Exact integers `α_p^(n) · 2^(n+2p)` for `p = 0, 1, …`.
#[derive(Clone, Debug)]
pub struct ScaledAlpha {
    n: u64,
    p: u64,
    current: BigUint,
}

impl ScaledAlpha {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1);
        ScaledAlpha {
            n,
            p: 0,
            current: BigUint::one(),
        }
    }
}

impl Iterator for ScaledAlpha {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        let out = self.current.clone();
        let (n, p) = (self.n, self.p);
        self.current *= (n + 2 * p + 1) * (n + 2 * p);
        self.current /= (p + 1) * (n + p + 1);
        self.p += 1;
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_power_convention() {
        assert_eq!(alpha(0, 0), Rational::one());
        assert_eq!(alpha(0, 3), Rational::zero());
        assert_eq!(beta(0, 0), Rational::one());
    }

    #[test]
    fn series_product() {
        let one_plus_x = SeriesPoly::new(vec![Rational::one(), Rational::one(), Rational::zero()]);
        let sq = one_plus_x.mul_truncated(&one_plus_x);
        assert_eq!(sq.coeffs()[2], Rational::one());
        assert_eq!(sq.coeffs()[1], Rational::from(2));
    }

    #[test]
    fn e_twelfth_constant_is_an_upper_bound() {
        let e = crate::arith::Interval::exp(&Rational::new(1, 12));
        assert!(Rational::from_f64(E_TWELFTH_UP).unwrap() >= *e.hi());
    }
}

use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use super::matrix::{DenseMatrix, Norm};
use super::OperatorError;
use crate::coeffs::{alpha_tail_bound, E_TWELFTH_UP};

/// A double at or above `e^(1/24)`.
const E_TWENTYFOURTH_UP: f64 = 1.0425469051899916;
const SQRT_PI: f64 = 1.7724538509055159;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode", content = "p")]
pub enum Truncation {
    /// Smallest `P` whose tail bound meets `eps`.
    Auto,
    Fixed(u64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BrunelOptions {
    pub eps: f64,
    pub norm: Norm,
    /// Largest `P` tried in [`Truncation::Auto`].
    pub cap: u64,
    pub probe_len: usize,
    pub growth_cutoff: f64,
    /// Rounds of averaging adjacent partial sums `S_P, …, S_(P+k)`. Speeds up
    /// oscillating series; the tail bound is unchanged.
    pub averaging: u32,
    pub truncation: Truncation,
}

impl Default for BrunelOptions {
    fn default() -> Self {
        BrunelOptions {
            eps: 1e-10,
            norm: Norm::OpInf,
            cap: 1_000_000,
            probe_len: 2000,
            growth_cutoff: 1e6,
            averaging: 0,
            truncation: Truncation::Auto,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BrunelResult {
    /// `Σ_{p<=P} α_p^(n) T^p`.
    pub matrix: DenseMatrix,
    #[serde(rename = "truncation_P")]
    pub truncation_p: u64,
    pub tail_bound: f64,
    pub norm_used: Norm,
}

/// `A^1, …, A^(n_max+1)` from one pass over the powers of `T`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BrunelFamily {
    /// `powers[k]` is `A^(k+1)`.
    pub powers: Vec<DenseMatrix>,
    /// Tail bound of `powers[k]`.
    pub tails: Vec<f64>,
    /// Tail bound of `powers[k] - powers[k+1]`.
    pub difference_tails: Vec<f64>,
    #[serde(rename = "truncation_P")]
    pub truncation_p: u64,
    pub target_met: bool,
    pub norm_used: Norm,
    pub probe: Probe,
}

impl BrunelFamily {
    /// `A^n` and its tail bound.
    pub fn power(&self, n: u64) -> (&DenseMatrix, f64) {
        let k = n as usize - 1;
        (&self.powers[k], self.tails[k])
    }

    /// `A^n - A^(n+1)` and its tail bound.
    pub fn difference(&self, n: u64) -> (DenseMatrix, f64) {
        let k = n as usize - 1;
        (&self.powers[k] - &self.powers[k + 1], self.difference_tails[k])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Contraction {
    pub q: u64,
    /// `‖T^q‖ < 1`.
    pub ratio: f64,
    /// `max_{j<q} ‖T^j‖`.
    pub prefix_sup: f64,
}

/// What the first `len` powers of `T` say about its growth, measured in a
/// submultiplicative norm.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Probe {
    pub norm: Norm,
    pub len: u64,
    /// `max_{p<=len} ‖T^p‖`.
    pub power_sup: f64,
    /// `max_{N<=len} ‖M_N(T)‖`.
    pub mean_sup: f64,
    /// First `q` with `T^(q+1) == T^q` bit for bit.
    pub stationary: Option<u64>,
    pub contraction: Option<Contraction>,
}

/// Measures `‖T^p‖` and `‖M_N(T)‖` up to `len`. The max norm is replaced
/// by the operator ∞-norm, which dominates it.
pub fn probe(t: &DenseMatrix, norm: Norm, len: usize, growth_cutoff: f64) -> Result<Probe, OperatorError> {
    let norm = if norm.is_submultiplicative() { norm } else { Norm::OpInf };
    let dim = t.dim();
    let mut power = DenseMatrix::identity(dim);
    let mut sum = DenseMatrix::zeros(dim);
    let mut norms = Vec::with_capacity(len + 1);
    let limit = growth_cutoff * power.norm(norm).max(1.0);
    let mut mean_sup: f64 = 0.0;
    let mut stationary = None;
    for p in 0..=len {
        let v = power.norm(norm);
        if !v.is_finite() || v > limit {
            return Err(OperatorError::SpectralExplosion { step: p as u64, norm: v });
        }
        norms.push(v);
        sum.add_scaled(&power, 1.0);
        mean_sup = mean_sup.max(sum.norm(norm) / (p + 1) as f64);
        let next = &power * t;
        if stationary.is_none() && next == power {
            stationary = Some(p as u64);
        }
        power = next;
    }
    let power_sup = norms.iter().cloned().fold(0.0, f64::max);
    let mut contraction: Option<Contraction> = None;
    let mut prefix = 0.0f64;
    for (q, &r) in norms.iter().enumerate().skip(1) {
        prefix = prefix.max(norms[q - 1]);
        if r < 1.0 {
            let better = match contraction {
                None => true,
                Some(c) => libm::log(r) / (q as f64) < libm::log(c.ratio) / (c.q as f64),
            };
            if better {
                contraction = Some(Contraction { q: q as u64, ratio: r, prefix_sup: prefix });
            }
        }
    }
    Ok(Probe {
        norm,
        len: len as u64,
        power_sup,
        mean_sup,
        stationary,
        contraction,
    })
}

/// Coefficient sequences whose series we bound.
#[derive(Clone, Copy)]
enum Coeffs {
    /// `α^(n)`
    Alpha(u64),
    /// `α^(n) - α^(n+1)`
    Difference(u64),
}

impl Coeffs {
    /// Bound on `|c_p|`, nonincreasing in `p >= 1`.
    fn point(self, p: u64) -> f64 {
        let p = p as f64;
        let base = 1.0 / (2.0 * SQRT_PI * p * libm::sqrt(p)) * (1.0 + 1e-12);
        match self {
            Coeffs::Alpha(n) => (n as f64 * E_TWELFTH_UP * base).min(1.0),
            Coeffs::Difference(_) => E_TWENTYFOURTH_UP * base,
        }
    }

    /// Bound on `Σ_{p>P} |c_p|`.
    fn tail(self, big_p: u64) -> f64 {
        match self {
            Coeffs::Alpha(n) => alpha_tail_bound(n, big_p),
            Coeffs::Difference(_) if big_p == 0 => 2.0,
            Coeffs::Difference(_) => {
                (E_TWENTYFOURTH_UP / libm::sqrt(core::f64::consts::PI * big_p as f64) * (1.0 + 1e-12)).min(2.0)
            }
        }
    }

    /// True when `c_p` has one sign and nonincreasing size for all `p > P`.
    fn settled_after(self, big_p: u64) -> bool {
        let next = big_p as i128 + 1;
        match self {
            Coeffs::Alpha(n) => {
                let n = n as i128;
                6 * next > n * n - 3 * n - 4
            }
            Coeffs::Difference(n) => {
                let ni = n as i128;
                if 2 * next <= ni * ni + ni {
                    return false;
                }
                // past the upper root of f_n: -12p² + b p - c < 0 with p beyond the vertex
                let b = 12 * (ni * ni + ni - 1);
                let c = crate::analysis::k_constant(n);
                24 * next > b && -12 * next * next + b * next - c < 0
            }
        }
    }
}

/// Smallest bound on `‖Σ_{p>P} c_p T^p‖` the probe supports.
fn tail_bound(c: Coeffs, pr: &Probe, big_p: u64) -> f64 {
    if let Some(q) = pr.stationary {
        if big_p >= q {
            return 0.0;
        }
    }
    let mut best = pr.power_sup * c.tail(big_p);
    if let Some(ct) = pr.contraction {
        let blocks = (big_p + 1) / ct.q;
        let geo = ct.prefix_sup * c.point(big_p + 1) * ct.q as f64 * libm::pow(ct.ratio, blocks as f64)
            / (1.0 - ct.ratio);
        best = best.min(geo);
    }
    if c.settled_after(big_p) {
        let abel = pr.mean_sup * ((2 * big_p + 3) as f64 * c.point(big_p + 1) + c.tail(big_p + 1));
        best = best.min(abel);
    }
    best * (1.0 + 1e-12)
}

/// Smallest `P <= cap` with `tail_bound(P) <= eps`.
fn first_meeting(c: Coeffs, pr: &Probe, eps: f64, cap: u64) -> Option<u64> {
    if let Some(q) = pr.stationary {
        return Some(q);
    }
    if tail_bound(c, pr, cap) > eps {
        return None;
    }
    let (mut lo, mut hi) = (0u64, 1u64);
    while hi < cap && tail_bound(c, pr, hi) > eps {
        lo = hi;
        hi = (hi * 2).min(cap);
    }
    // tail_bound(lo) > eps unless lo == 0, tail_bound(hi) <= eps
    if tail_bound(c, pr, lo) <= eps {
        return Some(lo);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if tail_bound(c, pr, mid) <= eps {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Weights of `S_P, …, S_(P+k)` after `k` rounds of pairwise averaging,
/// folded onto the terms `p = P+1, …, P+k`.
fn averaging_weights(k: u32) -> Vec<f64> {
    let mut binom = vec![1.0f64];
    for _ in 0..k {
        let mut next = vec![1.0; binom.len() + 1];
        for i in 1..binom.len() {
            next[i] = binom[i - 1] + binom[i];
        }
        binom = next;
    }
    let scale = libm::exp2(-(k as f64));
    (1..=k as usize)
        .map(|i| binom[i..].iter().sum::<f64>() * scale)
        .collect()
}

/// `α_(p+1)^(n) / α_p^(n)`.
fn ratio(n: u64, p: u64) -> f64 {
    let (nf, pf) = (n as f64, p as f64);
    (nf + 2.0 * pf + 1.0) * (nf + 2.0 * pf) / (4.0 * (pf + 1.0) * (nf + pf + 1.0))
}

/// `Σ_p w_p α_p^(n) T^p` for `n = 1..=n_top`, all at once.
fn sum_series(t: &DenseMatrix, n_top: u64, big_p: u64, averaging: u32, stationary: Option<u64>) -> Result<Vec<DenseMatrix>, OperatorError> {
    let dim = t.dim();
    let mut acc = vec![DenseMatrix::zeros(dim); n_top as usize];
    let mut coeff: Vec<f64> = (1..=n_top).map(|n| libm::exp2(-(n as f64))).collect();
    let mut partial = vec![0.0f64; n_top as usize];
    let mut power = DenseMatrix::identity(dim);
    match stationary {
        Some(q) => {
            for p in 0..=q {
                for (k, a) in acc.iter_mut().enumerate() {
                    let w = if p < q { coeff[k] } else { 1.0 - partial[k] };
                    a.add_scaled(&power, w);
                    partial[k] += coeff[k];
                    coeff[k] *= ratio(k as u64 + 1, p);
                }
                if p < q {
                    power = &power * t;
                }
            }
        }
        None => {
            let weights = averaging_weights(averaging);
            let last = big_p + averaging as u64;
            for p in 0..=last {
                let w = if p <= big_p { 1.0 } else { weights[(p - big_p - 1) as usize] };
                for (k, a) in acc.iter_mut().enumerate() {
                    a.add_scaled(&power, w * coeff[k]);
                    coeff[k] *= ratio(k as u64 + 1, p);
                }
                if p < last {
                    power = &power * t;
                }
            }
        }
    }
    if acc.iter().all(DenseMatrix::is_finite) {
        Ok(acc)
    } else {
        Err(OperatorError::NonFinite)
    }
}

fn checked_probe(t: &DenseMatrix, opts: &BrunelOptions) -> Result<Probe, OperatorError> {
    if !t.is_finite() {
        return Err(OperatorError::NonFinite);
    }
    probe(t, opts.norm, opts.probe_len, opts.growth_cutoff)
}

/// `A^n(T)` truncated where the certified tail meets `opts.eps`, or at the
/// fixed `P` requested.
pub fn brunel(t: &DenseMatrix, n: u64, opts: &BrunelOptions) -> Result<BrunelResult, OperatorError> {
    assert!(n >= 1, "brunel needs n >= 1");
    let pr = checked_probe(t, opts)?;
    let c = Coeffs::Alpha(n);
    let big_p = match opts.truncation {
        Truncation::Fixed(p) => p,
        Truncation::Auto => first_meeting(c, &pr, opts.eps, opts.cap).ok_or(OperatorError::NonConvergence { cap: opts.cap })?,
    };
    let stationary = pr.stationary.filter(|&q| big_p >= q);
    let mut sums = sum_series(t, n, big_p, opts.averaging, stationary)?;
    Ok(BrunelResult {
        matrix: sums.pop().unwrap(),
        truncation_p: stationary.unwrap_or(big_p),
        tail_bound: tail_bound(c, &pr, big_p),
        norm_used: opts.norm,
    })
}

/// `A^1, …, A^(n_max+1)` at one common `P`. In [`Truncation::Auto`] the `P`
/// is the one meeting `eps` for every power, clipped to `cap`; `target_met`
/// says whether the clip was needed.
pub fn brunel_family(t: &DenseMatrix, n_max: u64, opts: &BrunelOptions) -> Result<BrunelFamily, OperatorError> {
    assert!(n_max >= 1, "brunel_family needs n_max >= 1");
    let pr = checked_probe(t, opts)?;
    let n_top = n_max + 1;
    let big_p = match opts.truncation {
        Truncation::Fixed(p) => p,
        Truncation::Auto => (1..=n_top)
            .map(|n| first_meeting(Coeffs::Alpha(n), &pr, opts.eps, opts.cap).unwrap_or(opts.cap))
            .max()
            .unwrap(),
    };
    let stationary = pr.stationary.filter(|&q| big_p >= q);
    let powers = sum_series(t, n_top, big_p, opts.averaging, stationary)?;
    let tails: Vec<f64> = (1..=n_top).map(|n| tail_bound(Coeffs::Alpha(n), &pr, big_p)).collect();
    let difference_tails = (1..=n_max).map(|n| tail_bound(Coeffs::Difference(n), &pr, big_p)).collect();
    Ok(BrunelFamily {
        target_met: tails.iter().all(|&v| v <= opts.eps),
        powers,
        tails,
        difference_tails,
        truncation_p: stationary.unwrap_or(big_p),
        norm_used: opts.norm,
        probe: pr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::coeffs::alpha;

    #[test]
    fn averaging_weights_sum() {
        assert!(averaging_weights(0).is_empty());
        assert_eq!(averaging_weights(1), vec![0.5]);
        assert_eq!(averaging_weights(2), vec![0.75, 0.25]);
    }

    #[test]
    fn point_bounds_dominate() {
        for n in 1..12u64 {
            for p in [1u64, 2, 5, 17, 60, 300] {
                let a = alpha(n, p);
                assert!(a.to_f64() <= Coeffs::Alpha(n).point(p), "alpha {n} {p}");
                let d = (alpha(n, p) - alpha(n + 1, p)).abs();
                assert!(d.to_f64() <= Coeffs::Difference(n).point(p), "diff {n} {p}");
            }
        }
    }

    #[test]
    fn settled_differences_shrink() {
        for n in 1..25u64 {
            let start = (0..).find(|&p| Coeffs::Difference(n).settled_after(p)).unwrap();
            let mut prev: Option<Rational> = None;
            for p in start + 1..start + 200 {
                let d = alpha(n, p) - alpha(n + 1, p);
                assert!(d.is_negative(), "sign {n} {p}");
                if let Some(prev) = prev {
                    assert!(d.abs() <= prev.abs(), "size {n} {p}");
                }
                prev = Some(d);
            }
        }
    }

    #[test]
    fn search_finds_boundary() {
        let t = DenseMatrix::from_rows(&[vec![0.0, 0.5], vec![0.5, 0.0]]).unwrap();
        let pr = probe(&t, Norm::OpInf, 200, 1e6).unwrap();
        let c = Coeffs::Alpha(3);
        let p = first_meeting(c, &pr, 1e-10, 1_000_000).unwrap();
        assert!(tail_bound(c, &pr, p) <= 1e-10);
        assert!(tail_bound(c, &pr, p - 1) > 1e-10);
    }
}

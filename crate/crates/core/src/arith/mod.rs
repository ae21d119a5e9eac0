//! Exact arithmetic: rationals, binomials, powers of two and certified
//! enclosures of the few transcendental constants the bounds need.

mod interval;
mod rational;

pub use interval::{Interval, DEFAULT_BITS};
pub(crate) use interval::f64_above;
pub use rational::{ParseRationalError, Rational};

use num_bigint::{BigInt, BigUint};
use num_traits::One;

/// `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::ZERO;
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        // each prefix product is itself a binomial, so the division is exact
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `2^e` as an exact rational, for any sign of `e`.
pub fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::one() << (e as usize))
    } else {
        Rational::dyadic(1, e.unsigned_abs())
    }
}

//! Outward-rounded rational enclosures of real constants.
//!
//! Every bound that mixes exact combinatorics with π, `e^r` or square roots
//! is compared against the unfavourable endpoint of one of these intervals,
//! so a check never passes on the strength of a rounding error.

use core::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use spin::Once;

use super::Rational;

/// Working precision (binary digits) of every constant produced here.
pub const DEFAULT_BITS: u32 = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Widens the endpoints to multiples of `2^-bits`.
    pub fn round(&self, bits: u32) -> Self {
        Interval {
            lo: self.lo.floor_to_bits(bits),
            hi: self.hi.ceil_to_bits(bits),
        }
    }

    pub fn recip(&self) -> Self {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an interval containing zero"
        );
        Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    /// Enclosure of `sqrt` over a nonnegative interval.
    pub fn sqrt(&self) -> Self {
        assert!(!self.lo.is_negative(), "sqrt of a negative interval");
        Interval {
            lo: sqrt_lower(&self.lo, DEFAULT_BITS),
            hi: sqrt_upper(&self.hi, DEFAULT_BITS),
        }
    }

    pub fn sqrt_of(x: &Rational) -> Self {
        Interval::point(x.clone()).sqrt()
    }

    /// `e^x` for rational `x`.
    pub fn exp(x: &Rational) -> Self {
        if x.is_zero() {
            return Interval::point(Rational::one());
        }
        if x.is_negative() {
            return Interval::exp(&-x).recip().round(DEFAULT_BITS + 8);
        }
        let work = DEFAULT_BITS + 32;
        // halve until the argument is at most 1/2, square back afterwards
        let half = Rational::new(1, 2);
        let mut y = x.clone();
        let mut halvings = 0u32;
        while y > half {
            y = &y * &half;
            halvings += 1;
        }
        let y = Interval::point(y).round(work);
        let y_hi = y.hi().clone();
        let mut sum = Interval::point(Rational::one());
        let mut term = Interval::point(Rational::one());
        let eps = Rational::dyadic(1, (DEFAULT_BITS + 16) as u64);
        let mut j = 1u64;
        loop {
            term = (&(&term * &y) / &Interval::point(Rational::from(j))).round(work);
            sum = (&sum + &term).round(work);
            if term.hi() < &eps {
                break;
            }
            j += 1;
        }
        // remainder sum_{i>j} y^i/i! <= term * y/(j+1) / (1 - y/(j+2)) <= 2 * term * y
        let tail = Rational::from(2) * term.hi() * &y_hi;
        let mut out = Interval::new(sum.lo().clone(), sum.hi() + &tail);
        for _ in 0..halvings {
            out = (&out * &out).round(work);
        }
        out.round(DEFAULT_BITS + 8)
    }

    /// Cached enclosure of π (Machin's formula).
    pub fn pi() -> Self {
        static PI: Once<Interval> = Once::new();
        PI.call_once(|| {
            let a = arctan_inv(5, DEFAULT_BITS + 16);
            let b = arctan_inv(239, DEFAULT_BITS + 16);
            let sixteen = Interval::point(Rational::from(16));
            let four = Interval::point(Rational::from(4));
            (&(&sixteen * &a) - &(&four * &b)).round(DEFAULT_BITS + 8)
        })
        .clone()
    }

    /// Largest double not above the lower endpoint.
    pub fn lower_f64(&self) -> f64 {
        f64_below(&self.lo)
    }

    /// Smallest double not below the upper endpoint.
    pub fn upper_f64(&self) -> f64 {
        f64_above(&self.hi)
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) * Rational::new(1, 2)).to_f64()
    }
}

/// arctan(1/m) bracketed by consecutive partial sums of its alternating series.
fn arctan_inv(m: u64, bits: u32) -> Interval {
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let eps = Rational::dyadic(1, bits as u64 + 4);
    let mut power = m.clone();
    let mut sum = Rational::zero();
    let mut k = 0u64;
    loop {
        let term = Rational::new(BigInt::one(), &power * BigInt::from(2 * k + 1));
        if term < eps {
            // the first omitted term bounds the error and fixes its sign
            let other = if k % 2 == 0 { &sum + &term } else { &sum - &term };
            let (lo, hi) = if other < sum { (other, sum) } else { (sum, other) };
            return Interval::new(lo, hi).round(bits);
        }
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= &term;
        }
        power *= &m2;
        k += 1;
    }
}

fn sqrt_lower(x: &Rational, bits: u32) -> Rational {
    let scaled = (x.numer() << (2 * bits as usize)) / x.denom();
    let root = floor_isqrt(&scaled);
    Rational::dyadic(root, bits as u64)
}

fn sqrt_upper(x: &Rational, bits: u32) -> Rational {
    let scaled = x.ceil_to_bits(2 * bits);
    let numer = (scaled.numer() << (2 * bits as usize)) / scaled.denom();
    let root = floor_isqrt(&numer);
    let root = if &root * &root == numer {
        root
    } else {
        root + 1
    };
    Rational::dyadic(root, bits as u64)
}

fn floor_isqrt(x: &BigInt) -> BigInt {
    if x.is_negative() {
        BigInt::zero()
    } else {
        x.sqrt()
    }
}

pub(crate) fn f64_below(x: &Rational) -> f64 {
    let mut f = x.to_f64();
    if let Some(exact) = Rational::from_f64(f) {
        if &exact > x {
            f = next_down(f);
        }
    }
    f
}

pub(crate) fn f64_above(x: &Rational) -> f64 {
    let mut f = x.to_f64();
    if let Some(exact) = Rational::from_f64(f) {
        if &exact < x {
            f = next_up(f);
        }
    }
    f
}

fn next_up(f: f64) -> f64 {
    if f.is_nan() || f == f64::INFINITY {
        return f;
    }
    if f == 0.0 {
        return f64::from_bits(1);
    }
    let bits = f.to_bits();
    if f > 0.0 {
        f64::from_bits(bits + 1)
    } else {
        f64::from_bits(bits - 1)
    }
}

fn next_down(f: f64) -> f64 {
    -next_up(-f)
}

impl<'a, 'b> Add<&'b Interval> for &'a Interval {
    type Output = Interval;
    fn add(self, rhs: &'b Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl<'a, 'b> Sub<&'b Interval> for &'a Interval {
    type Output = Interval;
    fn sub(self, rhs: &'b Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl<'a, 'b> Mul<&'b Interval> for &'a Interval {
    type Output = Interval;
    fn mul(self, rhs: &'b Interval) -> Interval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if p < &lo {
                lo = p.clone();
            }
            if p > &hi {
                hi = p.clone();
            }
        }
        Interval { lo, hi }
    }
}

impl<'a, 'b> Div<&'b Interval> for &'a Interval {
    type Output = Interval;
    fn div(self, rhs: &'b Interval) -> Interval {
        self * &rhs.recip()
    }
}

impl Mul<Rational> for Interval {
    type Output = Interval;
    fn mul(self, rhs: Rational) -> Interval {
        &self * &Interval::point(rhs)
    }
}

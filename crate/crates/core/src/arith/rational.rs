use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact signed rational number, always stored in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as a rational")]
pub struct ParseRationalError(pub String);

impl Rational {
    /// Builds `numer / denom` and reduces it. Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    /// `numer / 2^exp`, the shape of every coefficient in this crate.
    pub fn dyadic(numer: impl Into<BigInt>, exp: u64) -> Self {
        let numer = numer.into();
        if numer.is_zero() {
            return Rational::zero();
        }
        let tz = numer.magnitude().trailing_zeros().unwrap_or(0).min(exp);
        let numer = numer >> tz;
        let denom = BigInt::one() << (exp - tz);
        // already reduced: the numerator is odd or the denominator is 1
        Rational(BigRational::new_raw(numer, denom))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Largest multiple of `2^-bits` that is `<= self`.
    pub fn floor_to_bits(&self, bits: u32) -> Self {
        let scaled = self.numer() << bits as usize;
        Rational::dyadic(scaled.div_floor(self.denom()), bits as u64)
    }

    /// Smallest multiple of `2^-bits` that is `>= self`.
    pub fn ceil_to_bits(&self, bits: u32) -> Self {
        let scaled = self.numer() << bits as usize;
        Rational::dyadic(div_ceil(&scaled, self.denom()), bits as u64)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    /// Exact conversion of a finite double.
    pub fn from_f64(value: f64) -> Option<Self> {
        BigRational::from_float(value).map(Rational)
    }

    pub fn pow(&self, exp: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    /// Decimal expansion when the denominator is of the form `2^a 5^b`,
    /// otherwise `p/q`.
    pub fn to_exact_string(&self) -> String {
        let denom = self.denom().magnitude();
        let twos = denom.trailing_zeros().unwrap_or(0);
        let mut rest = denom >> twos as usize;
        let five = BigUint::from(5u8);
        let mut fives = 0u64;
        while (&rest % &five).is_zero() {
            rest /= &five;
            fives += 1;
        }
        if !rest.is_one() {
            return self.to_string();
        }
        let digits = twos.max(fives);
        if digits == 0 {
            return self.numer().to_string();
        }
        // numer * 10^digits / denom is an exact integer
        let scale = num_traits::pow(BigUint::from(10u8), digits as usize);
        let scaled = self.numer().magnitude() * scale / denom;
        let mut body = scaled.to_string();
        let digits = digits as usize;
        if body.len() <= digits {
            let mut padded = String::with_capacity(digits + 1);
            for _ in 0..(digits + 1 - body.len()) {
                padded.push('0');
            }
            padded.push_str(&body);
            body = padded;
        }
        let split = body.len() - digits;
        let mut out = String::with_capacity(body.len() + 2);
        if self.is_negative() {
            out.push('-');
        }
        out.push_str(&body[..split]);
        out.push('.');
        out.push_str(&body[split..]);
        out
    }
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Rational::new(n, d));
        }
        if let Some((int, frac)) = t.split_once('.') {
            let negative = int.starts_with('-');
            let int_digits = int.trim_start_matches(['-', '+']);
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let mut digits: Vec<u8> = Vec::with_capacity(int_digits.len() + frac.len());
            digits.extend_from_slice(int_digits.as_bytes());
            digits.extend_from_slice(frac.as_bytes());
            let magnitude = BigUint::parse_bytes(&digits, 10).ok_or_else(err)?;
            let denom = num_traits::pow(BigUint::from(10u8), frac.len());
            let sign = if negative { Sign::Minus } else { Sign::Plus };
            return Ok(Rational::new(
                BigInt::from_biguint(sign, magnitude),
                BigInt::from(denom),
            ));
        }
        BigInt::from_str(t).map(Rational::from_integer).map_err(|_| err())
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_exact_string())
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(v: $t) -> Self {
                Rational::from_integer(BigInt::from(v))
            }
        }
    )*};
}
from_int!(i32, i64, u32, u64, usize);

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigUint> for Rational {
    fn from(v: BigUint) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl core::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> core::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.is_integer() && self.numer() == &BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Rational::from(*other)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn stored_reduced_with_positive_denominator() {
        let x = r(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(Rational::dyadic(12, 4), r(3, 4));
        assert_eq!(Rational::dyadic(0, 9), Rational::zero());
    }

    #[test]
    fn exact_string_forms() {
        assert_eq!(r(1, 8).to_exact_string(), "0.125");
        assert_eq!(r(-5, 2).to_exact_string(), "-2.5");
        assert_eq!(r(1, 3).to_exact_string(), "1/3");
        assert_eq!(r(7, 1).to_exact_string(), "7");
        assert_eq!(r(3, 50).to_exact_string(), "0.06");
        assert_eq!(r(1, 8).to_string(), "1/8");
    }

    #[test]
    fn parse_forms() {
        assert_eq!("1/8".parse::<Rational>().unwrap(), r(1, 8));
        assert_eq!("-0.125".parse::<Rational>().unwrap(), r(-1, 8));
        assert_eq!("42".parse::<Rational>().unwrap(), r(42, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("1.".parse::<Rational>().is_err());
    }

    #[test]
    fn dyadic_rounding_brackets_value() {
        let third = r(1, 3);
        let lo = third.floor_to_bits(10);
        let hi = third.ceil_to_bits(10);
        assert!(lo < third && third < hi);
        assert_eq!(&hi - &lo, Rational::dyadic(1, 10));
        let exact = r(5, 8);
        assert_eq!(exact.floor_to_bits(3), exact);
        assert_eq!(exact.ceil_to_bits(3), exact);
        assert_eq!(r(-1, 3).floor_to_bits(2), r(-1, 2));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| r(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a * &b, &b * &a);
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn reduced_form_is_unique(n in -5000i64..5000, d in 1i64..5000, k in 1i64..50) {
            let x = r(n * k, d * k);
            prop_assert_eq!(&x, &r(n, d));
            prop_assert!(x.denom().is_positive());
            prop_assert!(x.numer().gcd(x.denom()).is_one());
        }

        #[test]
        fn exact_string_round_trips(n in -1_000_000i64..1_000_000, d in 1i64..100_000) {
            let x = r(n, d);
            prop_assert_eq!(x.to_exact_string().parse::<Rational>().unwrap(), x);
        }
    }
}

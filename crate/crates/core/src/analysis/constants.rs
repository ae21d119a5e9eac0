use serde::Serialize;
use spin::Once;

use crate::arith::{Interval, Rational};

/// Every constant the bounds are checked against, exact or enclosed.
#[derive(Clone, Debug, Serialize)]
pub struct BoundConstants {
    /// `33/2`
    pub c_sum: Rational,
    /// `99/2`
    pub c_meanbound: Rational,
    /// `e^(1/12)`
    #[serde(skip)]
    pub stirling_slack: Interval,
    /// `6 √(2/π) e^(1/12)`
    #[serde(skip)]
    pub peak_constant: Interval,
    /// `6 e^(7/12) √(2π) / (2 - √2)`
    #[serde(skip)]
    pub average_constant: Interval,
    /// `4 √(6/π) + 2`, the power bound per unit of mean bound
    #[serde(skip)]
    pub mean_to_power: Interval,
    /// `4 e^(1/12) √(2/π)`
    #[serde(skip)]
    pub appendix_limit: Interval,
}

impl BoundConstants {
    pub fn get() -> &'static BoundConstants {
        static CONSTANTS: Once<BoundConstants> = Once::new();
        CONSTANTS.call_once(|| {
            let pi = Interval::pi();
            let two = Interval::point(Rational::from(2));
            let e12 = Interval::exp(&Rational::new(1, 12));
            let e712 = Interval::exp(&Rational::new(7, 12));
            let sqrt2 = Interval::sqrt_of(&Rational::from(2));
            let two_over_pi = (&two / &pi).sqrt();
            let six = Interval::point(Rational::from(6));
            let four = Interval::point(Rational::from(4));
            let peak = &(&six * &two_over_pi) * &e12;
            let average = &(&(&six * &e712) * &(&two * &pi).sqrt()) / &(&two - &sqrt2);
            let mean_to_power = &(&four * &(&six / &pi).sqrt()) + &two;
            let appendix = &(&four * &e12) * &two_over_pi;
            BoundConstants {
                c_sum: Rational::new(33, 2),
                c_meanbound: Rational::new(99, 2),
                stirling_slack: e12,
                peak_constant: peak,
                average_constant: average,
                mean_to_power,
                appendix_limit: appendix,
            }
        })
    }
}

/// Weierstrass majorant: `M_0 = 1`, `M_p = e^(1/(24p)) / (2(1+p)√(πp))`.
pub fn majorant(p: u64) -> f64 {
    if p == 0 {
        return 1.0;
    }
    let p = p as f64;
    libm::exp(1.0 / (24.0 * p)) / (2.0 * (1.0 + p) * libm::sqrt(core::f64::consts::PI * p))
}

/// `1 + ζ(3/2)` rounded up; it dominates `1 + Σ p^(-3/2)` and hence `Σ M_p`.
pub const MAJORANT_ENVELOPE: f64 = 3.613;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_values() {
        let c = BoundConstants::get();
        let near = |i: &Interval, v: f64| {
            assert!(i.lower_f64() <= v + 1e-12 && i.upper_f64() >= v - 1e-12, "{v}");
            assert!(i.width() < Rational::dyadic(1, 90));
        };
        near(&c.average_constant, 46.008737886554094);
        near(&c.peak_constant, 5.2033437611226105);
        near(&c.mean_to_power, 7.527906391541368);
        near(&c.appendix_limit, 3.4688958407484067);
        assert_eq!(c.c_sum, Rational::new(33, 2));
    }
}

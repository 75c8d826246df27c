//! Exact rational helpers shared by the probability modules.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational number, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("probability must lie in [0, 1], got {0}")]
pub struct ProbabilityRangeError(pub Rational);

/// An exact probability in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Probability(Rational);

impl Probability {
    pub fn new(value: Rational) -> Result<Self, ProbabilityRangeError> {
        if value.is_negative() || value > Rational::one() {
            return Err(ProbabilityRangeError(value));
        }
        Ok(Probability(value))
    }

    /// `favorable / total`; `total` must be positive and at least `favorable`.
    pub fn from_counts(favorable: &BigUint, total: &BigUint) -> Self {
        assert!(!total.is_zero(), "zero denominator");
        assert!(favorable <= total, "favorable weight exceeds total");
        Probability(Rational::new(
            BigInt::from(favorable.clone()),
            BigInt::from(total.clone()),
        ))
    }

    pub fn zero() -> Self {
        Probability(Rational::zero())
    }

    pub fn one() -> Self {
        Probability(Rational::one())
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn into_rational(self) -> Rational {
        self.0
    }

    /// Complement `1 - p`.
    pub fn complement(&self) -> Self {
        Probability(Rational::one() - &self.0)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.0)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Too large for a direct conversion; only reachable for absurd inputs.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Rounds `r` to `places` decimal places (round half to even), returning the
/// scaled integer and whether rounding was exact.
fn round_scaled(r: &Rational, places: u32) -> (BigInt, bool) {
    let scale = BigInt::from(10u32).pow(places);
    let num = r.numer() * &scale;
    let den = r.denom();
    let (q, rem): (BigInt, BigInt) = num.div_mod_floor(den);
    if rem.is_zero() {
        return (q, true);
    }
    let twice: BigInt = &rem * 2;
    let q = match twice.cmp(den) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    };
    (q, false)
}

/// Fixed-point decimal rendering with round-half-even and trailing zeros
/// trimmed: `1/1296` at 10 places is `0.0007716049`, `5/16` is `0.3125`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decimal {
    pub text: String,
    /// True when the rendering equals the rational exactly.
    pub exact: bool,
}

pub fn to_decimal(r: &Rational, places: u32) -> Decimal {
    let (scaled, exact) = round_scaled(r, places);
    let negative = scaled.sign() == Sign::Minus;
    let digits = scaled.abs().to_string();
    let places = places as usize;
    let (int_part, frac_part) = if digits.len() > places {
        let split = digits.len() - places;
        (digits[..split].to_string(), digits[split..].to_string())
    } else {
        ("0".to_string(), format!("{digits:0>places$}"))
    };
    let frac = frac_part.trim_end_matches('0');
    let mut text = String::new();
    if negative {
        text.push('-');
    }
    text.push_str(&int_part);
    if !frac.is_empty() {
        text.push('.');
        text.push_str(frac);
    }
    Decimal { text, exact }
}

/// Integer accumulator that stays in `i128` until it would overflow and then
/// spills into a `BigInt`. Exact regardless of summation order.
#[derive(Debug, Clone, Default)]
pub(crate) struct Accum {
    small: i128,
    big: BigInt,
}

impl Accum {
    pub(crate) fn add(&mut self, v: i128) {
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => {
                self.big += self.small;
                self.small = v;
            }
        }
    }

    pub(crate) fn add_big(&mut self, v: BigInt) {
        self.big += v;
    }

    /// Adds `w * t`, falling back to big integers on overflow.
    pub(crate) fn add_mul(&mut self, w: i128, t: i128) {
        match w.checked_mul(t) {
            Some(p) => self.add(p),
            None => self.add_big(BigInt::from(w) * BigInt::from(t)),
        }
    }

    pub(crate) fn merge(mut self, other: Accum) -> Accum {
        self.big += other.big;
        self.add(other.small);
        self
    }

    pub(crate) fn total(&self) -> BigInt {
        &self.big + self.small
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&q(1, 1296), 10).text, "0.0007716049");
        assert_eq!(to_decimal(&q(56, 216), 10).text, "0.2592592593");
        assert_eq!(to_decimal(&q(706, 1296), 10).text, "0.5447530864");
        let d = to_decimal(&q(10, 32), 10);
        assert_eq!(d.text, "0.3125");
        assert!(d.exact);
        assert_eq!(to_decimal(&q(0, 1), 10).text, "0");
        assert_eq!(to_decimal(&q(1, 1), 10).text, "1");
        assert_eq!(to_decimal(&q(-5, 2), 10).text, "-2.5");
        assert_eq!(to_decimal(&q(14, 1), 3).text, "14");
    }

    #[test]
    fn decimal_round_half_even() {
        assert_eq!(to_decimal(&q(5, 100), 1).text, "0");
        assert_eq!(to_decimal(&q(15, 100), 1).text, "0.2");
        assert_eq!(to_decimal(&q(25, 100), 1).text, "0.2");
        assert_eq!(to_decimal(&q(35, 100), 1).text, "0.4");
        assert_eq!(to_decimal(&q(-15, 100), 1).text, "-0.2");
        assert_eq!(to_decimal(&q(999, 1000), 2).text, "1");
    }

    #[test]
    fn probability_bounds() {
        assert!(Probability::new(q(3, 2)).is_err());
        assert!(Probability::new(q(-1, 2)).is_err());
        let p = Probability::new(q(2, 6)).unwrap();
        assert_eq!(p.to_string(), "1/3");
        assert_eq!(p.complement().to_string(), "2/3");
    }

    #[test]
    fn accum_spills_without_loss() {
        let mut a = Accum::default();
        a.add(i128::MAX);
        a.add(i128::MAX);
        a.add_mul(i128::MAX, 3);
        let expected = BigInt::from(i128::MAX) * 5;
        assert_eq!(a.total(), expected);
        let b = a.clone().merge(a);
        assert_eq!(b.total(), expected * 2);
    }
}

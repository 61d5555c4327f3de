//! Coefficient types.
//!
//! Every polynomial and symmetric-function container in this crate is generic
//! over a [`Scalar`]. The exact instance is [`Rational`] (arbitrary precision);
//! `f64` is supported for quick approximate evaluation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};
use std::fmt::Debug;
use std::ops::Neg;

/// Exact rational numbers with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

/// A field-like coefficient type.
pub trait Scalar: Num + Clone + Debug + Neg<Output = Self> + Send + Sync + 'static {
    /// Embed an exact rational. Inexact scalars round.
    fn from_rational(r: &Rational) -> Self;

    fn from_bigint(n: &BigInt) -> Self {
        Self::from_rational(&Rational::from_integer(n.clone()))
    }

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

/// Scalars with a sign and a total-enough order; needed for log-concavity tests.
pub trait OrderedScalar: Scalar + Signed + PartialOrd {}

impl<T: Scalar + Signed + PartialOrd> OrderedScalar for T {}

/// Shorthand for `num / den` as an exact rational.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as an exact rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Render a rational as a decimal string with `digits` digits after the point,
/// rounded half away from zero.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let num = r.numer() * &scale;
    let den = r.denom().clone();
    let neg = num.is_negative();
    let num = num.abs();
    let mut q = &num / &den;
    let rem = &num - &q * &den;
    if rem * 2 >= den {
        q += 1;
    }
    let s = q.to_string();
    let s = if s.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
    } else {
        s
    };
    let (whole, frac) = s.split_at(s.len() - digits);
    let sign = if neg && q_is_nonzero(whole, frac) { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

fn q_is_nonzero(whole: &str, frac: &str) -> bool {
    whole.chars().chain(frac.chars()).any(|c| c != '0')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&rat(1, 3), 5), "0.33333");
        assert_eq!(to_decimal(&rat(2, 3), 5), "0.66667");
        assert_eq!(to_decimal(&rat(-7, 2), 2), "-3.50");
        assert_eq!(to_decimal(&int(12), 0), "12");
        assert_eq!(to_decimal(&rat(-1, 1000), 2), "0.00");
    }

    #[test]
    fn float_embedding() {
        assert_eq!(<f64 as Scalar>::from_ratio(3, 4), 0.75);
        assert_eq!(<Rational as Scalar>::from_ratio(6, 8), rat(3, 4));
    }
}

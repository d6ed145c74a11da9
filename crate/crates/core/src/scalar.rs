//! Scalar fields used by the linear algebra and measure code.
//!
//! Structural data (functor images, restriction maps, kernels built from
//! finite maps) is carried as exact [`Rational`]s. `f64` is supported for
//! measured values and large randomized kernels, compared at a fixed
//! tolerance.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Tolerance used when a float quantity is compared against an exact one
/// (row sums of kernels, total mass of probability measures).
pub const FLOAT_TOLERANCE: f64 = 1e-12;

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + num_traits::Num
    + Signed
    + Send
    + Sync
    + 'static
{
    fn from_i64(value: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Whether the field is exact; exact fields compare with `==`.
    fn is_exact() -> bool;

    /// Equality up to the field's comparison tolerance.
    fn near(&self, other: &Self) -> bool {
        if Self::is_exact() {
            self == other
        } else {
            (self.to_f64() - other.to_f64()).abs() <= FLOAT_TOLERANCE
        }
    }
}

impl Scalar for Rational {
    fn from_i64(value: i64) -> Self {
        Rational::from_integer(BigInt::from(value))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for f64 {
    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_exact() -> bool {
        false
    }
}

pub fn int(value: i64) -> Rational {
    Rational::from_i64(value)
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"3"`, `"-2/5"` or a finite decimal such as `"0.25"` into an exact
/// rational. Decimals are read exactly (`0.1` is `1/10`, not the nearest
/// binary float).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Invalid(format!("not a rational number: {text:?}"));
    if let Some((num, den)) = text.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let mut numer = BigInt::from_str(&digits).map_err(|_| bad())?;
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(numer, denom));
    }
    BigInt::from_str(text)
        .map(Rational::from_integer)
        .map_err(|_| bad())
}

/// Converts a finite float to the exact rational it denotes.
pub fn rational_from_f64(value: f64) -> Result<Rational> {
    Rational::from_float(value)
        .ok_or_else(|| Error::Invalid(format!("non-finite value {value}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_fractions_and_decimals() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-2/4").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.x").is_err());
    }

    #[test]
    fn float_near_uses_tolerance() {
        assert!(1.0f64.near(&(1.0 + 1e-13)));
        assert!(!1.0f64.near(&(1.0 + 1e-9)));
        assert!(!ratio(1, 3).near(&ratio(1, 3 + 1)));
    }
}

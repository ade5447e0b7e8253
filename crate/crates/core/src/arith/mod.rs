//! Exact scalars: arbitrary-precision rationals and the quadratic field
//! `Q(sqrt(1 + 4x))` that hosts the roots of `t^2 - t - x`.

mod quad;

pub use quad::{lambda_pair, quad_sign, QuadExt, Sign};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The universal exact scalar.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Formats as `p/q` in lowest terms with `q > 0`, including `q = 1`.
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `p/q` or the integer shorthand `p`. The result is reduced.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: {text:?}"));
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(numer, denom))
}

/// Integer power with a possibly negative exponent.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    if exp < 0 {
        return pow(base, -exp).recip();
    }
    let mut result = Rational::one();
    let mut base = base.clone();
    let mut exp = exp as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            result *= &base;
        }
        base = &base * &base;
        exp >>= 1;
    }
    result
}

/// A rational that serializes as the string `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalStr(pub Rational);

impl fmt::Display for RationalStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl From<Rational> for RationalStr {
    fn from(value: Rational) -> Self {
        RationalStr(value)
    }
}

impl Serialize for RationalStr {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalStr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rational(&text)
            .map(RationalStr)
            .map_err(serde::de::Error::custom)
    }
}

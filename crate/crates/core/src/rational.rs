//! Exact rational arithmetic helpers.
//!
//! Every numeric quantity in this crate is a [`Rational`]. On the wire a
//! rational is a string `"p/q"` in lowest terms with the sign carried by the
//! numerator, or `"p"` when the denominator is one.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = BigRational;

/// Builds `num / den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn from_u64(value: u64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn parse(text: &str) -> Result<Rational, Error> {
    let trimmed = text.trim();
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    if trimmed.is_empty() {
        return Err(bad());
    }
    match trimmed.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(trimmed).map_err(|_| bad())?,
        )),
    }
}

/// Canonical text form: lowest terms, sign on the numerator.
pub fn format(value: &Rational) -> String {
    // `Ratio` is always kept reduced with a positive denominator.
    value.to_string()
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}

/// Lossy conversion used only for human-facing tolerances.
pub fn to_f64(value: &Rational) -> f64 {
    let num: f64 = value.numer().to_string().parse().unwrap_or(f64::NAN);
    let den: f64 = value.denom().to_string().parse().unwrap_or(f64::NAN);
    num / den
}

/// `serde(with = ...)` adapter for a single rational.
pub mod serde_rational {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(de::Error::custom)
    }
}

/// `serde(with = ...)` adapter for a list of rationals.
pub mod serde_rational_vec {
    use serde::{de, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for value in values {
            seq.serialize_element(&super::format(value))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| super::parse(t).map_err(de::Error::custom))
            .collect()
    }
}

/// `serde(with = ...)` adapter for an optional rational.
pub mod serde_rational_opt {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_some(&super::format(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let text = Option::<String>::deserialize(d)?;
        text.map(|t| super::parse(&t).map_err(de::Error::custom))
            .transpose()
    }
}

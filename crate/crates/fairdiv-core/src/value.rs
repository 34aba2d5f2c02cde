//! Exact nonnegative rational values.
//!
//! Every quantity that feeds a fairness comparison (valuations, thresholds,
//! the constant `c`) is a [`Value`]. Comparisons go through big-integer
//! cross-multiplication inside `BigRational`, so threshold tests like
//! `v(S) >= c * v(M \ S)` are exact. No floating point appears on any
//! correctness path.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational that is guaranteed nonnegative with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(BigRational);

impl Value {
    pub fn zero() -> Value {
        Value(BigRational::zero())
    }

    pub fn one() -> Value {
        Value(BigRational::one())
    }

    pub fn from_int(n: u64) -> Value {
        Value(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` in lowest terms. Fails on a zero denominator.
    pub fn new(num: u64, den: u64) -> Result<Value> {
        if den == 0 {
            return Err(Error::InvalidValue("zero denominator".into()));
        }
        Ok(Value(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    /// Wraps a raw rational, rejecting negatives.
    pub fn from_rational(r: BigRational) -> Result<Value> {
        if r.is_negative() {
            return Err(Error::InvalidValue(format!("negative value {r}")));
        }
        Ok(Value(r))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
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

    /// `self - rhs`, or `None` if the result would be negative.
    pub fn checked_sub(&self, rhs: &Value) -> Option<Value> {
        if self < rhs {
            None
        } else {
            Some(Value(&self.0 - &rhs.0))
        }
    }

    /// `self / rhs`, or `None` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Value) -> Option<Value> {
        if rhs.is_zero() {
            None
        } else {
            Some(Value(&self.0 / &rhs.0))
        }
    }

    /// `n * self`.
    pub fn scaled(&self, n: u64) -> Value {
        Value(&self.0 * BigInt::from(n))
    }

    /// `min(1, self)`.
    pub fn capped_at_one(self) -> Value {
        if self.0 > BigRational::one() {
            Value::one()
        } else {
            self
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl Add for &Value {
    type Output = Value;
    fn add(self, rhs: &Value) -> Value {
        Value(&self.0 + &rhs.0)
    }
}

impl Add for Value {
    type Output = Value;
    fn add(self, rhs: Value) -> Value {
        Value(self.0 + rhs.0)
    }
}

impl AddAssign<&Value> for Value {
    fn add_assign(&mut self, rhs: &Value) {
        self.0 += &rhs.0;
    }
}

impl Mul for &Value {
    type Output = Value;
    fn mul(self, rhs: &Value) -> Value {
        Value(&self.0 * &rhs.0)
    }
}

impl Mul for Value {
    type Output = Value;
    fn mul(self, rhs: Value) -> Value {
        Value(self.0 * rhs.0)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Value {
    type Err = Error;

    /// Parses `"p"` or `"p/q"` with nonnegative integer parts.
    fn from_str(s: &str) -> Result<Value> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num)
            .map_err(|e| Error::Parse(format!("bad numerator {num:?}: {e}")))?;
        let den = BigInt::from_str(den)
            .map_err(|e| Error::Parse(format!("bad denominator {den:?}: {e}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Value::from_rational(BigRational::new(num, den))
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Value, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "7", "2/7", "9/10", "14/4"] {
            let v: Value = s.parse().unwrap();
            let again: Value = v.to_string().parse().unwrap();
            assert_eq!(v, again);
        }
        assert_eq!("14/4".parse::<Value>().unwrap().to_string(), "7/2");
    }

    #[test]
    fn negatives_rejected() {
        assert!("-1".parse::<Value>().is_err());
        assert!("1/-2".parse::<Value>().is_err());
        assert!("1/0".parse::<Value>().is_err());
    }

    #[test]
    fn exact_comparisons() {
        let a = Value::new(2, 7).unwrap();
        let b = Value::new(1, 4).unwrap();
        assert!(a > b);
        assert_eq!(a.checked_sub(&b).unwrap(), Value::new(1, 28).unwrap());
        assert!(b.checked_sub(&a).is_none());
        assert_eq!(a.checked_div(&b).unwrap(), Value::new(8, 7).unwrap());
        assert!(a.checked_div(&Value::zero()).is_none());
        assert_eq!(
            Value::new(8, 7).unwrap().capped_at_one(),
            Value::one()
        );
        assert_eq!(a.scaled(7), Value::from_int(2));
    }
}

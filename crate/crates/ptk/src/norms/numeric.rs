//! Exact values: rationals and square roots of rationals.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{PtkError, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// `"3"`, `"-2/5"` or a decimal such as `"0.125"`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || PtkError::Parse(format!("not a rational: {:?}", s));
    if t.contains('/') {
        let (n, d) = t.split_once('/').ok_or_else(bad)?;
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{}{}", int, frac);
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let d = num::pow(BigInt::from(10), frac.len());
    let v = Q::new(n, d);
    Ok(if neg { -v } else { v })
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Square root of a nonnegative rational, when it is rational.
pub fn rational_sqrt(v: &Q) -> Option<Q> {
    Some(Q::new(exact_sqrt(v.numer())?, exact_sqrt(v.denom())?))
}

/// `√sq` for a nonnegative rational `sq`. Ordered by `sq`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    sq: Q,
}

impl Surd {
    pub fn zero() -> Surd {
        Surd { sq: Q::zero() }
    }

    pub fn sqrt_of(sq: Q) -> Surd {
        assert!(!sq.is_negative(), "square root of a negative number");
        Surd { sq }
    }

    pub fn from_rational(r: &Q) -> Surd {
        assert!(!r.is_negative(), "negative value");
        Surd { sq: r * r }
    }

    pub fn square(&self) -> &Q {
        &self.sq
    }

    pub fn as_rational(&self) -> Option<Q> {
        rational_sqrt(&self.sq)
    }

    pub fn to_f64(&self) -> f64 {
        q_to_f64(&self.sq).sqrt()
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Surd) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Surd) -> Ordering {
        self.sq.cmp(&other.sq)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{}", r),
            None => write!(f, "sqrt({})", self.sq),
        }
    }
}

impl FromStr for Surd {
    type Err = PtkError;

    fn from_str(s: &str) -> Result<Surd> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
            let v = parse_rational(inner)?;
            if v.is_negative() {
                return Err(PtkError::Parse(format!("negative radicand in {:?}", s)));
            }
            return Ok(Surd::sqrt_of(v));
        }
        let v = parse_rational(t)?;
        if v.is_negative() {
            return Err(PtkError::Parse(format!("negative value {:?}", s)));
        }
        Ok(Surd::from_rational(&v))
    }
}

/// A norm value: exact, or a float when the value is not a square root of
/// a rational.
#[derive(Clone, Debug, PartialEq)]
pub enum Real {
    Exact(Surd),
    Approx(f64),
}

impl Real {
    pub fn zero() -> Real {
        Real::Exact(Surd::zero())
    }

    pub fn rational(r: &Q) -> Real {
        Real::Exact(Surd::from_rational(r))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(s) => s.to_f64(),
            Real::Approx(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&Surd> {
        match self {
            Real::Exact(s) => Some(s),
            Real::Approx(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    /// `self ≤ other`, exactly when both are exact.
    pub fn le(&self, other: &Real) -> bool {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => a <= b,
            _ => self.to_f64() <= other.to_f64(),
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(s) => write!(f, "{}", s),
            Real::Approx(v) => write!(f, "{}", v),
        }
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Real::Exact(s) => ser.serialize_str(&s.to_string()),
            Real::Approx(v) => ser.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Real, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(de)? {
            Raw::Num(v) => Ok(Real::Approx(v)),
            Raw::Text(s) => s.parse().map(Real::Exact).map_err(serde::de::Error::custom),
        }
    }
}

/// Serde helper for rationals written as strings.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Q, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Q, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(de)? {
            Raw::Int(n) => Ok(q(n)),
            Raw::Text(s) => parse_rational(&s).map_err(serde::de::Error::custom),
        }
    }
}

/// Pads a float into an interval that contains the exact value computed
/// with a handful of correctly rounded operations.
pub fn pad(v: f64) -> (f64, f64) {
    let e = v.abs() * 1e-12 + f64::MIN_POSITIVE;
    ((v - e).max(0.0), v + e)
}

pub fn pow_int(base: u32, exp: u64) -> BigInt {
    let mut r = BigInt::one();
    let b = BigInt::from(base);
    for _ in 0..exp {
        r *= &b;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("1/3").unwrap(), q_frac(1, 3));
        assert_eq!(parse_rational("-0.25").unwrap(), q_frac(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), q(7));
        assert_eq!(parse_rational(".5").unwrap(), q_frac(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn surd_display_and_order() {
        assert_eq!(Surd::sqrt_of(q(4)).to_string(), "2");
        assert_eq!(Surd::sqrt_of(q_frac(1, 3)).to_string(), "sqrt(1/3)");
        assert_eq!(Surd::from_rational(&q_frac(3, 2)).to_string(), "3/2");
        assert!(Surd::sqrt_of(q(2)) < Surd::from_rational(&q_frac(3, 2)));
        assert_eq!("sqrt(1/3)".parse::<Surd>().unwrap(), Surd::sqrt_of(q_frac(1, 3)));
        assert_eq!("4/15".parse::<Surd>().unwrap(), Surd::from_rational(&q_frac(4, 15)));
    }

    #[test]
    fn real_json() {
        let r = Real::Exact(Surd::sqrt_of(q(3)));
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"sqrt(3)\"");
        let back: Real = serde_json::from_str("\"sqrt(3)\"").unwrap();
        assert_eq!(back, r);
        let a: Real = serde_json::from_str("1.5").unwrap();
        assert_eq!(a, Real::Approx(1.5));
    }
}

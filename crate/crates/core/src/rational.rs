//! Exact non-negative rational numbers used for delays and clock values.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// A non-negative rational number, always stored in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer / denom`. Fails on a zero denominator or a negative value.
    pub fn new(numer: i64, denom: i64) -> Result<Self, Error> {
        Self::from_big(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Result<Self, Error> {
        if denom.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Self::try_from_ratio(BigRational::new(numer, denom))
    }

    fn try_from_ratio(r: BigRational) -> Result<Self, Error> {
        if r.is_negative() {
            return Err(Error::NegativeRational(r.to_string()));
        }
        Ok(Rational(r))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn half() -> Self {
        Rational(BigRational::new(1.into(), 2.into()))
    }

    pub fn from_int(n: u64) -> Self {
        Rational(BigRational::from_integer(n.into()))
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Integral part as an exact rational.
    pub fn floor(&self) -> Rational {
        Rational(self.0.floor())
    }

    /// Fractional part, in `[0, 1)`.
    pub fn fract(&self) -> Rational {
        Rational(self.0.fract())
    }

    /// Integral part as `u64`, or `None` if it does not fit.
    pub fn floor_u64(&self) -> Option<u64> {
        self.0.floor().to_integer().to_u64()
    }

    /// `self - other`, or `None` when the result would be negative.
    pub fn checked_sub(&self, other: &Rational) -> Option<Rational> {
        let d = &self.0 - &other.0;
        (!d.is_negative()).then_some(Rational(d))
    }

    /// `self / other`; `None` when `other` is zero.
    pub fn checked_div(&self, other: &Rational) -> Option<Rational> {
        (!other.is_zero()).then(|| Rational(&self.0 / &other.0))
    }

    /// True if the value is an integer in `{0, ..., k}`.
    pub fn is_int_at_most(&self, k: u32) -> bool {
        self.is_integer() && *self <= Rational::from_int(k as u64)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &'a Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &'a Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| &acc + x)
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational::from_int(n as u64)
    }
}

/// Prints `p` for integers and `p/q` otherwise.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_uint(s: &str, whole: &str) -> Result<BigInt, Error> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("invalid rational `{whole}`")));
    }
    BigInt::parse_bytes(s.as_bytes(), 10).ok_or_else(|| Error::Parse(format!("invalid rational `{whole}`")))
}

/// Accepts `p`, `p/q` and decimal `i.f` notation. The value is reduced.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            return Rational::from_big(parse_uint(p.trim(), s)?, parse_uint(q.trim(), s)?);
        }
        if let Some((int, frac)) = s.split_once('.') {
            let int = if int.is_empty() { BigInt::zero() } else { parse_uint(int, s)? };
            let scale = BigInt::from(10).pow(frac.len() as u32);
            let frac = if frac.is_empty() { BigInt::zero() } else { parse_uint(frac, s)? };
            return Rational::from_big(int * &scale + frac, scale);
        }
        Rational::from_big(parse_uint(s, s)?, BigInt::one())
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

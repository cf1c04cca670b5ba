//! Exact rational scalar used for every claim, estate, award and threshold.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Arbitrary-precision rational in canonical form (positive denominator,
/// numerator and denominator coprime).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Ratio(BigRational);

impl Ratio {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, Error> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::ParseRatio("zero denominator".into()));
        }
        Ok(Ratio(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Ratio(BigRational::from_integer(n.into()))
    }

    /// `numer / denom` for small literals; panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Ratio(BigRational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> Self {
        Ratio(BigRational::zero())
    }

    pub fn one() -> Self {
        Ratio(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Ratio(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Ratio(self.0.recip())
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    /// Lossy conversion, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for Ratio {
    fn from(r: BigRational) -> Self {
        Ratio(r)
    }
}

impl From<i64> for Ratio {
    fn from(n: i64) -> Self {
        Ratio::from_integer(n)
    }
}

impl From<u64> for Ratio {
    fn from(n: u64) -> Self {
        Ratio::from_integer(n)
    }
}

impl From<usize> for Ratio {
    fn from(n: usize) -> Self {
        Ratio::from_integer(n)
    }
}

impl From<i32> for Ratio {
    fn from(n: i32) -> Self {
        Ratio::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Ratio> for Ratio {
            type Output = Ratio;
            fn $method(self, rhs: Ratio) -> Ratio {
                Ratio($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Ratio> for Ratio {
            type Output = Ratio;
            fn $method(self, rhs: &'a Ratio) -> Ratio {
                Ratio($trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $trait<Ratio> for &'a Ratio {
            type Output = Ratio;
            fn $method(self, rhs: Ratio) -> Ratio {
                Ratio($trait::$method(&self.0, rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Ratio> for &'a Ratio {
            type Output = Ratio;
            fn $method(self, rhs: &'b Ratio) -> Ratio {
                Ratio($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Ratio> for Ratio {
    fn add_assign(&mut self, rhs: &Ratio) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Ratio> for Ratio {
    fn add_assign(&mut self, rhs: Ratio) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Ratio> for Ratio {
    fn sub_assign(&mut self, rhs: &Ratio) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Ratio {
    type Output = Ratio;
    fn neg(self) -> Ratio {
        Ratio(-self.0)
    }
}

impl Neg for &Ratio {
    type Output = Ratio;
    fn neg(self) -> Ratio {
        Ratio(-&self.0)
    }
}

impl Sum for Ratio {
    fn sum<I: Iterator<Item = Ratio>>(iter: I) -> Ratio {
        iter.fold(Ratio::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Ratio> for Ratio {
    fn sum<I: Iterator<Item = &'a Ratio>>(iter: I) -> Ratio {
        iter.fold(Ratio::zero(), |acc, x| acc + x)
    }
}

/// Renders `p/q`, or just `p` for integers.
impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts integers, finite decimals (`-12.375`) and fractions (`7/3`).
/// Repeating or exponent notation is rejected so that every accepted string
/// denotes exactly one rational.
impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = parse_decimal(n.trim())?;
            let d = parse_decimal(d.trim())?;
            if d.is_zero() {
                return Err(Error::ParseRatio(format!("zero denominator in {s:?}")));
            }
            return Ok(n / d);
        }
        parse_decimal(s)
    }
}

fn parse_decimal(s: &str) -> Result<Ratio, Error> {
    let bad = || Error::ParseRatio(format!("not a finite decimal: {s:?}"));
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = Ratio(BigRational::new(numer, denom));
    Ok(if negative { -value } else { value })
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for building a vector of integer ratios in tests and examples.
pub fn ratios(values: &[i64]) -> Vec<Ratio> {
    values.iter().map(|&v| Ratio::from(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Ratio::frac(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!("38.75".parse::<Ratio>().unwrap(), Ratio::frac(155, 4));
        assert_eq!("-0.5".parse::<Ratio>().unwrap(), Ratio::frac(-1, 2));
        assert_eq!(".25".parse::<Ratio>().unwrap(), Ratio::frac(1, 4));
        assert_eq!("100/13".parse::<Ratio>().unwrap(), Ratio::frac(100, 13));
        assert_eq!("7".parse::<Ratio>().unwrap(), Ratio::from(7));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", ".", "1e3", "abc", "1.2.3", "1/0", "--1"] {
            assert!(s.parse::<Ratio>().is_err(), "{s:?} should not parse");
        }
    }

    #[test]
    fn display_roundtrip() {
        for r in [Ratio::frac(200, 23), Ratio::from(-4), Ratio::zero()] {
            assert_eq!(r.to_string().parse::<Ratio>().unwrap(), r);
        }
    }
}

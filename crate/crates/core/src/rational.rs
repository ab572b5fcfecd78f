//! Exact reduced fractions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reduced fraction `num/den` with `den ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i64>);

impl Rational {
    /// Panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(Ratio::zero())
    }

    pub fn one() -> Self {
        Rational(Ratio::one())
    }

    pub fn num(&self) -> i64 {
        *self.0.numer()
    }

    pub fn den(&self) -> i64 {
        *self.0.denom()
    }

    /// `num/den` for unsigned counts, as used for ψ/|G|.
    pub fn from_counts(num: u64, den: u64) -> Result<Self> {
        let n = i64::try_from(num).map_err(|_| Error::Overflow(format!("{num} exceeds i64")))?;
        let d = i64::try_from(den).map_err(|_| Error::Overflow(format!("{den} exceeds i64")))?;
        if d == 0 {
            return Err(Error::Precondition("zero denominator".into()));
        }
        Ok(Rational::new(n, d))
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        num_traits::CheckedMul::checked_mul(&self.0, &other.0).map(Rational)
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        num_traits::CheckedAdd::checked_add(&self.0, &other.0).map(Rational)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        num_traits::CheckedSub::checked_sub(&self.0, &other.0).map(Rational)
    }

    /// Decimal rendering with `places` digits, rounding half to even.
    /// For display only; comparisons stay exact.
    pub fn to_decimal(&self, places: u32) -> String {
        let neg = self.0.is_negative();
        let num = self.num().unsigned_abs() as u128;
        let den = self.den() as u128;
        let scale = 10u128.pow(places);
        let scaled = num * scale;
        let (mut q, r) = (scaled / den, scaled % den);
        match (2 * r).cmp(&den) {
            Ordering::Greater => q += 1,
            Ordering::Equal if q % 2 == 1 => q += 1,
            _ => {}
        }
        let int = q / scale;
        let frac = q % scale;
        let sign = if neg && q != 0 { "-" } else { "" };
        if places == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac:0width$}", width = places as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.num() as f64 / self.den() as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den() == 1 {
            write!(f, "{}", self.num())
        } else {
            write!(f, "{}/{}", self.num(), self.den())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(0, format!("'{s}' is not a fraction"));
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Rational::new(n, d))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_op!(Add, add);
forward_op!(Sub, sub);
forward_op!(Mul, mul);
forward_op!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// Wire form: `{"num": n, "den": d, "display": "n/d"}`.
#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: i64,
    den: i64,
    display: String,
}

impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RationalRepr { num: self.num(), den: self.den(), display: format!("{}/{}", self.num(), self.den()) }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = RationalRepr::deserialize(deserializer)?;
        if repr.den <= 0 {
            return Err(serde::de::Error::custom("denominator must be positive"));
        }
        let value = Rational::new(repr.num, repr.den);
        if value.num() != repr.num || value.den() != repr.den {
            return Err(serde::de::Error::custom("fraction is not reduced"));
        }
        Ok(value)
    }
}

//! Exact rational costs.
//!
//! Every edge cost, cut value and clustering parameter is a [`Cost`]. The
//! representation is an arbitrary-precision rational, so comparisons at
//! intersection points of cut-cost lines are exact.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cost(BigRational);

impl Cost {
    pub fn zero() -> Self {
        Cost(BigRational::zero())
    }

    pub fn one() -> Self {
        Cost(BigRational::one())
    }

    pub fn integer(value: i64) -> Self {
        Cost(BigRational::from_integer(BigInt::from(value)))
    }

    /// `num / den`; panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Cost(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(value: BigRational) -> Self {
        Cost(value)
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

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn times(&self, k: usize) -> Cost {
        Cost(&self.0 * BigRational::from_integer(BigInt::from(k)))
    }

    pub fn div_int(&self, k: i64) -> Cost {
        Cost(&self.0 / BigRational::from_integer(BigInt::from(k)))
    }

    /// Lossy conversion for display and benchmarking only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn bad(s: &str) -> Error {
    Error::Validation(format!("not an exact number: {s:?}"))
}

/// Accepts integers, `num/den` fractions and decimals with an optional
/// exponent (`1.25`, `3e-2`). Decimals are converted exactly.
impl FromStr for Cost {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(bad(s));
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad(s))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad(s))?;
            if d.is_zero() {
                return Err(bad(s));
            }
            return Ok(Cost(BigRational::new(n, d)));
        }
        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(i) => {
                let e: i32 = s[i + 1..].parse().map_err(|_| bad(s))?;
                (&s[..i], e)
            }
            None => (s, 0),
        };
        let (negative, digits) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty()
            || !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad(s));
        }
        let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad(s))?;
        let scale = exponent - frac_part.len() as i32;
        let ten = BigInt::from(10);
        let mut value = BigRational::from_integer(all);
        if scale >= 0 {
            value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
        } else {
            value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
        }
        if negative {
            value = -value;
        }
        Ok(Cost(value))
    }
}

impl Serialize for Cost {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Cost {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Cost> for Cost {
            type Output = Cost;
            fn $method(self, rhs: Cost) -> Cost {
                Cost($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Cost> for Cost {
            type Output = Cost;
            fn $method(self, rhs: &'a Cost) -> Cost {
                Cost($trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Cost> for &'a Cost {
            type Output = Cost;
            fn $method(self, rhs: &'b Cost) -> Cost {
                Cost($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl<'a> AddAssign<&'a Cost> for Cost {
    fn add_assign(&mut self, rhs: &'a Cost) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Cost> for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        self.0 += rhs.0;
    }
}

impl<'a> SubAssign<&'a Cost> for Cost {
    fn sub_assign(&mut self, rhs: &'a Cost) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Cost {
    type Output = Cost;
    fn neg(self) -> Cost {
        Cost(-self.0)
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::zero(), |acc, c| acc + c)
    }
}

impl<'a> Sum<&'a Cost> for Cost {
    fn sum<I: Iterator<Item = &'a Cost>>(iter: I) -> Cost {
        iter.fold(Cost::zero(), |mut acc, c| {
            acc += c;
            acc
        })
    }
}

impl From<i64> for Cost {
    fn from(value: i64) -> Self {
        Cost::integer(value)
    }
}

/// Integer arithmetic used by the exact inner loops (`i128` or `BigInt`).
pub(crate) trait ExactInt:
    Clone + Ord + Zero + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
{
}

impl<T> ExactInt for T where
    T: Clone + Ord + Zero + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T>
{
}

/// Common denominator of `costs` and the costs scaled by it. `small` is set
/// when the absolute values sum to well below `i128::MAX`.
pub(crate) struct Scaled {
    pub scale: BigInt,
    pub values: Vec<BigInt>,
    pub small: bool,
}

pub(crate) fn scale_to_integers<'a>(costs: impl IntoIterator<Item = &'a Cost>) -> Scaled {
    let costs: Vec<&Cost> = costs.into_iter().collect();
    let mut scale = BigInt::one();
    for c in &costs {
        scale = num_integer::Integer::lcm(&scale, c.denom());
    }
    let values: Vec<BigInt> = costs.iter().map(|c| c.numer() * (&scale / c.denom())).collect();
    let total: BigInt = values.iter().map(|v| v.abs()).sum();
    Scaled {
        small: total.bits() < 120,
        scale,
        values,
    }
}

//! Exact fractions for orbifold costs and Euler characteristics.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A reduced fraction with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));
    pub const TWO: Rational = Rational(Ratio::new_raw(2, 1));

    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    pub fn is_positive(&self) -> bool {
        self.numer() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.numer() < 0
    }

    /// `None` for zero.
    pub fn recip(&self) -> Option<Rational> {
        (!self.is_zero()).then(|| Rational(self.0.recip()))
    }

    pub fn floor(&self) -> i64 {
        self.0.floor().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// `(n - 1) / n`, the cost of an order-`n` cone point.
    pub fn cone_cost(order: u32) -> Rational {
        Rational::new(order as i64 - 1, order as i64)
    }

    /// `(n - 1) / 2n`, the cost of an order-`n` corner reflector.
    pub fn corner_cost(order: u32) -> Rational {
        Rational::new(order as i64 - 1, 2 * order as i64)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |a, b| a + b)
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: i64,
    den: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a fraction: {0:?}")]
pub struct ParseRationalError(String);

/// Accepts `n` or `n/d`.
impl FromStr for Rational {
    type Err = ParseRationalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim().parse::<Ratio<i64>>().map(Rational).map_err(|_| ParseRationalError(s.to_string()))
    }
}

impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalRepr { num: self.numer(), den: self.denom() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RationalRepr::deserialize(d)?;
        if r.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational::new(r.num, r.den))
    }
}

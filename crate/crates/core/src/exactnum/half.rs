use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::BigRational;

/// A number of the form `n` or `n + 1/2`, stored as its double.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    twice: BigInt,
}

impl HalfInteger {
    pub fn from_twice(twice: impl Into<BigInt>) -> Self {
        HalfInteger {
            twice: twice.into(),
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_twice(n.into() * 2)
    }

    /// `n + 1/2`.
    pub fn half_odd(n: impl Into<BigInt>) -> Self {
        Self::from_twice(n.into() * 2 + 1)
    }

    pub fn twice(&self) -> &BigInt {
        &self.twice
    }

    pub fn is_integer(&self) -> bool {
        self.twice.is_even()
    }

    pub fn is_positive(&self) -> bool {
        self.twice.is_positive()
    }

    pub fn add_integer(&self, k: i64) -> Self {
        Self::from_twice(&self.twice + 2 * k)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.twice.clone(), BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        self.twice.to_f64().unwrap_or(f64::NAN) / 2.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", &self.twice / 2)
        } else if self.twice.is_zero() {
            f.write_str("0")
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Div, Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::hpfloat::{Enclosure, HpFloat};
use super::BigRational;
use crate::error::{domain, Error, Result};

/// An exact real `coeff · π^(sqrt_pi_exp / 2)`.
///
/// Zero is always stored with exponent 0, so derived equality is value
/// equality. Ordering compares values, deciding the transcendental cases
/// through π enclosures of increasing precision.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiTaggedRational {
    coeff: BigRational,
    sqrt_pi_exp: i32,
}

impl PiTaggedRational {
    pub fn new(coeff: BigRational, sqrt_pi_exp: i32) -> Self {
        let sqrt_pi_exp = if coeff.is_zero() { 0 } else { sqrt_pi_exp };
        PiTaggedRational { coeff, sqrt_pi_exp }
    }

    pub fn from_rational(coeff: BigRational) -> Self {
        Self::new(coeff, 0)
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `num / den`; panics if `den` is zero.
    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn pi() -> Self {
        Self::new(BigRational::one(), 2)
    }

    pub fn sqrt_pi() -> Self {
        Self::new(BigRational::one(), 1)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn sqrt_pi_exp(&self) -> i32 {
        self.sqrt_pi_exp
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// True when the value is rational (no residual power of √π).
    pub fn is_rational(&self) -> bool {
        self.sqrt_pi_exp == 0
    }

    pub fn signum(&self) -> i32 {
        if self.coeff.is_zero() {
            0
        } else if self.coeff.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.sqrt_pi_exp != other.sqrt_pi_exp {
            return Err(Error::ExponentMismatch {
                left: self.sqrt_pi_exp,
                right: other.sqrt_pi_exp,
            });
        }
        Ok(Self::new(&self.coeff + &other.coeff, self.sqrt_pi_exp))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(domain("reciprocal of zero"));
        }
        Ok(Self::new(self.coeff.recip(), -self.sqrt_pi_exp))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.checked_recip()?)
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        Self::new(&self.coeff * q, self.sqrt_pi_exp)
    }

    pub fn powi(&self, n: i32) -> Self {
        if n == 0 {
            return Self::one();
        }
        let base = if n < 0 {
            self.checked_recip().expect("negative power of zero")
        } else {
            self.clone()
        };
        let k = n.unsigned_abs();
        let mut coeff = BigRational::one();
        for _ in 0..k {
            coeff *= &base.coeff;
        }
        Self::new(coeff, base.sqrt_pi_exp * k as i32)
    }

    /// Certified interval around the value, relative width about `2^-bits`.
    pub fn enclose(&self, bits: u32) -> Enclosure {
        if self.is_zero() {
            return Enclosure::exact(HpFloat::zero());
        }
        let c = Enclosure::from_rational(&self.coeff, bits + 8);
        if self.sqrt_pi_exp == 0 {
            return c;
        }
        let p = Enclosure::pi_pow_half(self.sqrt_pi_exp, bits + 8);
        c.mul(&p, bits)
    }

    /// Value correctly rounded (to nearest) at `precision_bits` significant bits.
    pub fn to_float(&self, precision_bits: u32) -> Result<HpFloat> {
        if precision_bits < 53 {
            return Err(domain("precision must be at least 53 bits"));
        }
        let mut work = precision_bits + 32;
        loop {
            if let Some(v) = self.enclose(work).round_certain(precision_bits) {
                return Ok(v);
            }
            work *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_float(53)
            .expect("53 bits is a valid precision")
            .to_f64()
    }
}

impl Neg for &PiTaggedRational {
    type Output = PiTaggedRational;
    fn neg(self) -> PiTaggedRational {
        PiTaggedRational::new(-&self.coeff, self.sqrt_pi_exp)
    }
}

impl Neg for PiTaggedRational {
    type Output = PiTaggedRational;
    fn neg(self) -> PiTaggedRational {
        -&self
    }
}

impl Mul for &PiTaggedRational {
    type Output = PiTaggedRational;
    fn mul(self, rhs: &PiTaggedRational) -> PiTaggedRational {
        PiTaggedRational::new(&self.coeff * &rhs.coeff, self.sqrt_pi_exp + rhs.sqrt_pi_exp)
    }
}

impl Mul for PiTaggedRational {
    type Output = PiTaggedRational;
    fn mul(self, rhs: PiTaggedRational) -> PiTaggedRational {
        &self * &rhs
    }
}

/// Panics on division by zero, like `BigRational`.
impl Div for &PiTaggedRational {
    type Output = PiTaggedRational;
    fn div(self, rhs: &PiTaggedRational) -> PiTaggedRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Div for PiTaggedRational {
    type Output = PiTaggedRational;
    fn div(self, rhs: PiTaggedRational) -> PiTaggedRational {
        &self / &rhs
    }
}

impl PartialOrd for PiTaggedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PiTaggedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (s1, s2) = (self.signum(), other.signum());
        if s1 != s2 || s1 == 0 {
            return s1.cmp(&s2);
        }
        if self.sqrt_pi_exp == other.sqrt_pi_exp {
            return self.coeff.cmp(&other.coeff);
        }
        // |c1| π^(p1/2) vs |c2| π^(p2/2)  <=>  n vs d · π^((p2 - p1)/2)
        let n = self.coeff.numer().abs() * other.coeff.denom();
        let d = self.coeff.denom() * other.coeff.numer().abs();
        let n = HpFloat::from_integer(n);
        let d = HpFloat::from_integer(d);
        let delta = other.sqrt_pi_exp - self.sqrt_pi_exp;
        let mut bits = 64;
        let magnitude = loop {
            let p = Enclosure::pi_pow_half(delta, bits);
            if n < d.mul(p.lo()) {
                break Ordering::Less;
            }
            if n > d.mul(p.hi()) {
                break Ordering::Greater;
            }
            // π is transcendental, so distinct exponents never tie.
            bits *= 2;
        };
        if s1 < 0 {
            magnitude.reverse()
        } else {
            magnitude
        }
    }
}

/// `num/den * pi^k` for even tags, `num/den * pi^p/2` for odd ones.
impl fmt::Display for PiTaggedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} * pi^", self.coeff.numer(), self.coeff.denom())?;
        if self.sqrt_pi_exp % 2 == 0 {
            write!(f, "{}", self.sqrt_pi_exp / 2)
        } else {
            write!(f, "{}/2", self.sqrt_pi_exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn zero_is_canonical() {
        let z = PiTaggedRational::new(BigRational::zero(), 5);
        assert_eq!(z, PiTaggedRational::zero());
        assert_eq!(z.sqrt_pi_exp(), 0);
        let x = PiTaggedRational::pi();
        assert_eq!(x.checked_sub(&x).unwrap(), PiTaggedRational::zero());
    }

    #[test]
    fn multiplication_adds_exponents() {
        let a = PiTaggedRational::new(BigRational::new(3.into(), 4.into()), 1);
        let b = PiTaggedRational::new(BigRational::new(8.into(), 3.into()), -2);
        let p = &a * &b;
        assert_eq!(p, PiTaggedRational::new(BigRational::from_integer(2.into()), -1));
        assert_eq!(&p / &b, a);
    }

    #[test]
    fn addition_needs_matching_exponents() {
        let a = PiTaggedRational::pi();
        let b = PiTaggedRational::one();
        assert_eq!(
            a.checked_add(&b),
            Err(Error::ExponentMismatch { left: 2, right: 0 })
        );
        assert_eq!(
            a.checked_add(&a).unwrap(),
            PiTaggedRational::new(BigRational::from_integer(2.into()), 2)
        );
        assert_eq!(a.checked_add(&PiTaggedRational::zero()).unwrap(), a);
    }

    #[test]
    fn display_format() {
        let a = PiTaggedRational::new(BigRational::new(8.into(), 3.into()), -2);
        assert_eq!(a.to_string(), "8/3 * pi^-1");
        let b = PiTaggedRational::new(BigRational::new((-3).into(), 4.into()), 1);
        assert_eq!(b.to_string(), "-3/4 * pi^1/2");
        assert_eq!(PiTaggedRational::from_integer(6).to_string(), "6/1 * pi^0");
    }

    #[test]
    fn to_float_examples() {
        assert_eq!(PiTaggedRational::pi().to_f64(), 3.141592653589793);
        let r = PiTaggedRational::new(BigRational::new(8.into(), 3.into()), -2);
        // high-precision division oracle: 8 / (3 π)
        let v = r.to_float(256).unwrap();
        let three_pi = Enclosure::pi(400).mul_ratio(3, 1, 400);
        let oracle = Enclosure::exact(HpFloat::from_u64(8)).div(&three_pi, 400).unwrap();
        let diff = v.sub(&oracle.midpoint(400)).abs();
        assert!(diff.log2_floor().unwrap() < -256);
        assert_eq!(r.to_string(), "8/3 * pi^-1");
        assert!((r.to_f64() - 0.848_826_363_156_775).abs() < 1e-15);
        assert_eq!(PiTaggedRational::ratio(3, 4).to_f64(), 0.75);
        assert!(r.to_float(52).is_err());
    }

    #[test]
    fn ordering_across_exponents() {
        let pi = PiTaggedRational::pi();
        let just_below = PiTaggedRational::ratio(314159265358979_i64, 100000000000000_i64);
        let just_above = PiTaggedRational::ratio(314159265358980_i64, 100000000000000_i64);
        assert!(just_below < pi && pi < just_above);
        assert!(-&pi < -&just_below);
        assert!(PiTaggedRational::sqrt_pi() > PiTaggedRational::ratio(177, 100));
        assert!(PiTaggedRational::sqrt_pi() < PiTaggedRational::ratio(178, 100));
        assert!(PiTaggedRational::zero() < PiTaggedRational::sqrt_pi());
        assert!(-&PiTaggedRational::one() < PiTaggedRational::zero());
    }

    #[test]
    fn powers() {
        let a = PiTaggedRational::new(BigRational::new(2.into(), 3.into()), 1);
        assert_eq!(a.powi(2), PiTaggedRational::new(BigRational::new(4.into(), 9.into()), 2));
        assert_eq!(a.powi(-1), a.checked_recip().unwrap());
        assert_eq!(a.powi(0), PiTaggedRational::one());
    }
}

//! Dyadic high-precision floats with explicit rounding, and certified
//! interval enclosures built from them.
//!
//! [`HpFloat`] stores `mantissa · 2^exponent` exactly; additions and
//! multiplications are exact and only the operations that must round
//! (division, square root, [`HpFloat::round`]) take a precision and a
//! [`Rounding`] direction. [`Enclosure`] carries a lower and an upper bound
//! rounded outward, which is what makes correctly rounded evaluation and
//! exact sign decisions on transcendental values possible.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::BigRational;

/// Rounding direction for the operations that cannot be exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
    /// To nearest, ties to even mantissa.
    NearestEven,
}

/// An exact binary floating-point number `mantissa · 2^exponent`.
///
/// The representation is normalised (odd mantissa, or zero with exponent
/// zero), so structural equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HpFloat {
    mantissa: BigInt,
    exponent: i64,
}

impl HpFloat {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        if mantissa.is_zero() {
            return Self::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        HpFloat {
            mantissa: mantissa >> tz,
            exponent: exponent + tz as i64,
        }
    }

    pub fn zero() -> Self {
        HpFloat {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_integer(BigInt::one())
    }

    pub fn from_integer(n: BigInt) -> Self {
        Self::new(n, 0)
    }

    pub fn from_u64(n: u64) -> Self {
        Self::new(BigInt::from(n), 0)
    }

    /// Exact conversion; `None` for NaN and infinities.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Self::zero());
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1u64 << 52), biased - 1075)
        };
        let m = BigInt::from(mant);
        Some(Self::new(if negative { -m } else { m }, exp))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Number of significant bits in the mantissa.
    pub fn precision(&self) -> u64 {
        self.mantissa.bits()
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        HpFloat {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    pub fn neg(&self) -> Self {
        HpFloat {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }

    /// `floor(log2 |self|)`; `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exponent + self.mantissa.bits() as i64 - 1)
        }
    }

    /// Multiplies by `2^k` exactly.
    pub fn scale_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        HpFloat {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.mantissa * &other.mantissa, self.exponent + other.exponent)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as usize;
        let b = &other.mantissa << (other.exponent - e) as usize;
        Self::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Rounds to at most `bits` significant bits.
    pub fn round(&self, bits: u32, mode: Rounding) -> Self {
        assert!(bits >= 1, "precision must be at least one bit");
        let len = self.mantissa.bits();
        if len <= bits as u64 {
            return self.clone();
        }
        let shift = len - bits as u64;
        let negative = self.is_negative();
        let mag = self.mantissa.magnitude();
        let mut q: BigUint = mag >> shift;
        let rem: BigUint = mag - (&q << shift);
        let up = if rem.is_zero() {
            false
        } else {
            match (mode, negative) {
                (Rounding::Down, false) | (Rounding::Up, true) => false,
                (Rounding::Down, true) | (Rounding::Up, false) => true,
                (Rounding::NearestEven, _) => {
                    let half = BigUint::one() << (shift - 1);
                    match rem.cmp(&half) {
                        Ordering::Greater => true,
                        Ordering::Less => false,
                        Ordering::Equal => q.is_odd(),
                    }
                }
            }
        };
        if up {
            q += 1u32;
        }
        let m = BigInt::from_biguint(if negative { Sign::Minus } else { Sign::Plus }, q);
        Self::new(m, self.exponent + shift as i64)
    }

    /// `self / other` rounded to `bits` significant bits.
    ///
    /// Panics if `other` is zero.
    pub fn div(&self, other: &Self, bits: u32, mode: Rounding) -> Self {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let negative = self.is_negative() != other.is_negative();
        let num = self.mantissa.magnitude();
        let den = other.mantissa.magnitude();
        let want = bits as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let shift = want.max(0) as u64;
        let (q, r) = (num << shift).div_rem(den);
        let mut exp = self.exponent - other.exponent - shift as i64;
        let q = if r.is_zero() {
            q
        } else {
            exp -= 1;
            (q << 1u32) + 1u32
        };
        let m = BigInt::from_biguint(if negative { Sign::Minus } else { Sign::Plus }, q);
        HpFloat::new(m, exp).round(bits, mode)
    }

    /// `n / d` rounded to `bits` significant bits.
    pub fn from_ratio(n: &BigInt, d: &BigInt, bits: u32, mode: Rounding) -> Self {
        Self::from_integer(n.clone()).div(&Self::from_integer(d.clone()), bits, mode)
    }

    pub fn from_rational(q: &BigRational, bits: u32, mode: Rounding) -> Self {
        Self::from_ratio(q.numer(), q.denom(), bits, mode)
    }

    /// Square root rounded to `bits` significant bits; `None` for negative input.
    pub fn sqrt(&self, bits: u32, mode: Rounding) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mag = self.mantissa.magnitude();
        let want = 2 * (bits as i64 + 2) - mag.bits() as i64;
        let mut shift = want.max(0);
        if (self.exponent - shift) % 2 != 0 {
            shift += 1;
        }
        let scaled: BigUint = mag << shift as u64;
        let root = scaled.sqrt();
        let mut exp = (self.exponent - shift) / 2;
        let root = if &root * &root == scaled {
            root
        } else {
            exp -= 1;
            (root << 1u32) + 1u32
        };
        Some(HpFloat::new(BigInt::from(root), exp).round(bits, mode))
    }

    /// Nearest `f64`, ties to even, with gradual underflow and overflow to
    /// infinity.
    pub fn to_f64(&self) -> f64 {
        let top = match self.log2_floor() {
            None => return 0.0,
            Some(t) => t,
        };
        let sign = if self.is_negative() { -1.0 } else { 1.0 };
        if top > 1023 {
            return sign * f64::INFINITY;
        }
        let avail = if top >= -1022 { 53 } else { top + 1075 };
        if avail <= 0 {
            // Below half the smallest subnormal, or exactly half of it (tie to zero).
            let half_min = HpFloat::new(BigInt::one(), -1075);
            return if self.abs() > half_min {
                sign * f64::from_bits(1)
            } else {
                sign * 0.0
            };
        }
        let r = self.round(avail as u32, Rounding::NearestEven);
        let m = r.mantissa.to_f64().unwrap_or(f64::INFINITY);
        libm::ldexp(m, r.exponent as i32)
    }

    /// Correctly rounded decimal digits: `(negative, digits, exp10)` with the
    /// value equal to `0.d₁d₂… × 10^(exp10 + 1)`, i.e. `d₁.d₂… × 10^exp10`.
    pub fn to_decimal_digits(&self, significant: usize) -> (bool, String, i64) {
        assert!(significant >= 1);
        let Some(top) = self.log2_floor() else {
            return (false, "0".repeat(significant), 0);
        };
        let mag = self.mantissa.magnitude();
        let mut k = libm::floor(top as f64 * core::f64::consts::LOG10_2) as i64;
        let lower = BigUint::from(10u32).pow((significant - 1) as u32);
        let upper = &lower * 10u32;
        loop {
            let t = significant as i64 - 1 - k;
            let mut num = mag.clone();
            let mut den = BigUint::one();
            if self.exponent >= 0 {
                num <<= self.exponent as u64;
            } else {
                den <<= (-self.exponent) as u64;
            }
            if t >= 0 {
                num *= BigUint::from(10u32).pow(t as u32);
            } else {
                den *= BigUint::from(10u32).pow((-t) as u32);
            }
            let (mut d, r) = num.div_rem(&den);
            let twice = r << 1u32;
            if twice > den || (twice == den && d.is_odd()) {
                d += 1u32;
            }
            if d >= upper {
                k += 1;
                // A carry to 10^sig is already the correctly rounded result.
                if d == upper {
                    return (self.is_negative(), digits_of(&lower), k);
                }
                continue;
            }
            if d < lower {
                k -= 1;
                continue;
            }
            return (self.is_negative(), digits_of(&d), k);
        }
    }
}

fn digits_of(n: &BigUint) -> String {
    n.to_str_radix(10)
}

impl PartialOrd for HpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HpFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.signum().cmp(&other.signum()) {
            Ordering::Equal => {}
            o => return o,
        }
        self.sub(other).signum().cmp(&0)
    }
}

/// Renders `significant` digits (the formatter precision, default 17) with
/// trailing zeros trimmed; positional for moderate exponents, scientific
/// otherwise.
impl fmt::Display for HpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(17).max(1);
        let (neg, digits, exp10) = self.to_decimal_digits(sig);
        f.write_str(&format_decimal(neg, &digits, exp10, true))
    }
}

/// Places a decimal point into `digits` (value `d₁.d₂… × 10^exp10`).
pub fn format_decimal(negative: bool, digits: &str, exp10: i64, trim: bool) -> String {
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    let digits = if trim {
        let t = digits.trim_end_matches('0');
        if t.is_empty() {
            "0"
        } else {
            t
        }
    } else {
        digits
    };
    if digits == "0" {
        out.push('0');
        return out;
    }
    let n = digits.len() as i64;
    if (-5..21).contains(&exp10) {
        if exp10 < 0 {
            out.push_str("0.");
            for _ in 0..(-exp10 - 1) {
                out.push('0');
            }
            out.push_str(digits);
        } else if exp10 + 1 >= n {
            out.push_str(digits);
            for _ in 0..(exp10 + 1 - n) {
                out.push('0');
            }
        } else {
            let (a, b) = digits.split_at((exp10 + 1) as usize);
            out.push_str(a);
            out.push('.');
            out.push_str(b);
        }
    } else {
        let (a, b) = digits.split_at(1);
        out.push_str(a);
        if !b.is_empty() {
            out.push('.');
            out.push_str(b);
        }
        out.push_str(&alloc::format!("e{}", exp10));
    }
    out
}

/// A closed interval `[lo, hi]` known to contain some real value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: HpFloat,
    hi: HpFloat,
}

impl Enclosure {
    /// Panics if `lo > hi`.
    pub fn new(lo: HpFloat, hi: HpFloat) -> Self {
        assert!(lo <= hi, "enclosure bounds out of order");
        Enclosure { lo, hi }
    }

    pub fn exact(x: HpFloat) -> Self {
        Enclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn one() -> Self {
        Self::exact(HpFloat::one())
    }

    pub fn lo(&self) -> &HpFloat {
        &self.lo
    }

    pub fn hi(&self) -> &HpFloat {
        &self.hi
    }

    pub fn from_rational(q: &BigRational, bits: u32) -> Self {
        Enclosure {
            lo: HpFloat::from_rational(q, bits, Rounding::Down),
            hi: HpFloat::from_rational(q, bits, Rounding::Up),
        }
    }

    /// π to at least `bits` bits.
    pub fn pi(bits: u32) -> Self {
        let p = bits as usize + 64;
        let mut cc = astro_float::Consts::new().expect("allocating constant cache");
        let pi = cc.pi(p, astro_float::RoundingMode::Down);
        let (words, nbits, _, exp, _) = pi.as_raw_parts().expect("pi is finite");
        let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
        let m = BigInt::from(BigUint::from_bytes_le(&bytes));
        let base = exp as i64 - nbits as i64;
        let mid = HpFloat::new(m, base);
        // Widen by a couple of ulps at precision p regardless of the backend's
        // rounding guarantee.
        let ulp = HpFloat::new(BigInt::one(), exp as i64 - p as i64);
        Enclosure {
            lo: mid.sub(&ulp.scale_pow2(1)),
            hi: mid.add(&ulp.scale_pow2(1)),
        }
        .round_outward(bits + 32)
    }

    /// `π^(k/2)`.
    pub fn pi_pow_half(k: i32, bits: u32) -> Self {
        let work = bits + 16 + 2 * k.unsigned_abs().min(1 << 20);
        let pi = Self::pi(work);
        let mut acc = Self::one();
        let whole = k.unsigned_abs() / 2;
        for _ in 0..whole {
            acc = acc.mul(&pi, work);
        }
        if k.unsigned_abs() % 2 == 1 {
            let root = pi.sqrt(work).expect("pi is positive");
            acc = acc.mul(&root, work);
        }
        if k < 0 {
            acc = acc.recip(work).expect("powers of pi are nonzero");
        }
        acc.round_outward(bits)
    }

    pub fn round_outward(&self, bits: u32) -> Self {
        Enclosure {
            lo: self.lo.round(bits, Rounding::Down),
            hi: self.hi.round(bits, Rounding::Up),
        }
    }

    pub fn neg(&self) -> Self {
        Enclosure {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn add(&self, other: &Self, bits: u32) -> Self {
        Enclosure {
            lo: self.lo.add(&other.lo).round(bits, Rounding::Down),
            hi: self.hi.add(&other.hi).round(bits, Rounding::Up),
        }
    }

    pub fn sub(&self, other: &Self, bits: u32) -> Self {
        self.add(&other.neg(), bits)
    }

    pub fn mul(&self, other: &Self, bits: u32) -> Self {
        if !self.lo.is_negative() && !other.lo.is_negative() {
            return Enclosure {
                lo: self.lo.mul(&other.lo).round(bits, Rounding::Down),
                hi: self.hi.mul(&other.hi).round(bits, Rounding::Up),
            };
        }
        let products = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = products.iter().min().expect("four products").clone();
        let hi = products.iter().max().expect("four products").clone();
        Enclosure {
            lo: lo.round(bits, Rounding::Down),
            hi: hi.round(bits, Rounding::Up),
        }
    }

    /// `None` when the interval contains zero.
    pub fn recip(&self, bits: u32) -> Option<Self> {
        if self.lo.signum() * self.hi.signum() <= 0 {
            return None;
        }
        let one = HpFloat::one();
        Some(Enclosure {
            lo: one.div(&self.hi, bits, Rounding::Down),
            hi: one.div(&self.lo, bits, Rounding::Up),
        })
    }

    pub fn div(&self, other: &Self, bits: u32) -> Option<Self> {
        if other.lo.signum() * other.hi.signum() <= 0 {
            return None;
        }
        if other.lo == other.hi {
            let d = &other.lo;
            let (a, b) = if d.is_negative() {
                (&self.hi, &self.lo)
            } else {
                (&self.lo, &self.hi)
            };
            return Some(Enclosure {
                lo: a.div(d, bits, Rounding::Down),
                hi: b.div(d, bits, Rounding::Up),
            });
        }
        Some(self.mul(&other.recip(bits + 8)?, bits))
    }

    /// Multiplies by the positive rational `num / den`.
    pub fn mul_ratio(&self, num: u64, den: u64, bits: u32) -> Self {
        assert!(num > 0 && den > 0, "scale factor must be positive");
        let n = HpFloat::from_u64(num);
        let d = HpFloat::from_u64(den);
        Enclosure {
            lo: self.lo.mul(&n).div(&d, bits, Rounding::Down),
            hi: self.hi.mul(&n).div(&d, bits, Rounding::Up),
        }
    }

    /// `None` when the interval reaches below zero.
    pub fn sqrt(&self, bits: u32) -> Option<Self> {
        Some(Enclosure {
            lo: self.lo.sqrt(bits, Rounding::Down)?,
            hi: self.hi.sqrt(bits, Rounding::Up)?,
        })
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            let hi = core::cmp::max(self.lo.abs(), self.hi.clone());
            Enclosure {
                lo: HpFloat::zero(),
                hi,
            }
        }
    }

    pub fn width(&self) -> HpFloat {
        self.hi.sub(&self.lo)
    }

    pub fn contains(&self, x: &HpFloat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Midpoint rounded to nearest.
    pub fn midpoint(&self, bits: u32) -> HpFloat {
        self.lo
            .add(&self.hi)
            .scale_pow2(-1)
            .round(bits, Rounding::NearestEven)
    }

    /// The correctly rounded value at `bits`, when both bounds agree on it.
    pub fn round_certain(&self, bits: u32) -> Option<HpFloat> {
        let a = self.lo.round(bits, Rounding::NearestEven);
        let b = self.hi.round(bits, Rounding::NearestEven);
        (a == b).then_some(a)
    }

    /// `Some(ordering)` when the two intervals are disjoint or both are the
    /// same single point.
    pub fn certain_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Bounds as `f64`, rounded outward.
    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (
            self.lo.round(53, Rounding::Down).to_f64(),
            self.hi.round(53, Rounding::Up).to_f64(),
        )
    }
}

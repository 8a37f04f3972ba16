//! Γ on the half-integer lattice, exactly.
//!
//! `Γ(n) = (n-1)!` and `Γ(n + 1/2) = (2n-1)!! / 2ⁿ · √π`. Ratios are built
//! from prime valuations (Legendre's formula) so the result comes out
//! already reduced, without a gcd over two huge factorials.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use super::{BigRational, HalfInteger, PiTaggedRational};
use crate::error::{domain, Error, Result};

/// Largest `2z` accepted by the exact Γ routines.
pub const MAX_TWICE_ARGUMENT: u64 = 20_000_000;

/// `n!!`, with `0!! = 1`.
pub fn double_factorial(n: u64) -> BigUint {
    if n < 2 {
        return BigUint::one();
    }
    range_product(if n % 2 == 0 { 2 } else { 1 }, n, 2)
}

/// `n!`.
pub fn factorial(n: u64) -> BigUint {
    if n < 2 {
        return BigUint::one();
    }
    range_product(1, n, 1)
}

/// `start · (start+step) · … · end` by binary splitting.
pub(crate) fn range_product(start: u64, end: u64, step: u64) -> BigUint {
    if start > end {
        return BigUint::one();
    }
    let count = (end - start) / step + 1;
    if count <= 16 {
        let mut acc = BigUint::one();
        let mut k = start;
        while k <= end {
            acc *= k;
            k += step;
        }
        return acc;
    }
    let mid = start + (count / 2) * step;
    range_product(start, mid - step, step) * range_product(mid, end, step)
}

pub(crate) fn product_tree(items: &[BigUint]) -> BigUint {
    match items.len() {
        0 => BigUint::one(),
        1 => items[0].clone(),
        n => product_tree(&items[..n / 2]) * product_tree(&items[n / 2..]),
    }
}

fn checked_twice(z: &HalfInteger) -> Result<u64> {
    if !z.is_positive() {
        return Err(domain(alloc::format!("gamma has a pole or is undefined at {}", z)));
    }
    match z.twice().to_u64() {
        Some(t) if t <= MAX_TWICE_ARGUMENT => Ok(t),
        _ => Err(Error::ResourceLimit {
            what: "exact gamma argument (twice the value)",
            requested: z.twice().to_u64().unwrap_or(u64::MAX),
            limit: MAX_TWICE_ARGUMENT,
        }),
    }
}

/// Exact `Γ(z)` for `z > 0` on the half-integer lattice.
pub fn gamma_exact(z: &HalfInteger) -> Result<PiTaggedRational> {
    let twice = checked_twice(z)?;
    if twice % 2 == 0 {
        let n = twice / 2;
        Ok(PiTaggedRational::from_rational(BigRational::from_integer(
            BigInt::from(factorial(n - 1)),
        )))
    } else {
        let n = twice / 2;
        // (2n-1)!! is odd, so the fraction is already in lowest terms.
        let coeff = BigRational::new_raw(
            BigInt::from(double_factorial_odd(n)),
            BigInt::from(BigUint::one() << n),
        );
        Ok(PiTaggedRational::new(coeff, 1))
    }
}

// (2n-1)!!, with (-1)!! = 1.
fn double_factorial_odd(n: u64) -> BigUint {
    if n == 0 {
        BigUint::one()
    } else {
        double_factorial(2 * n - 1)
    }
}

pub(crate) fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Exponent of `p` in `n!`.
pub(crate) fn legendre(n: u64, p: u64) -> i64 {
    let mut total = 0;
    let mut q = n;
    while q >= p {
        q /= p;
        total += q as i64;
    }
    total
}

/// Exponent of `p` in the rational part of `Γ(twice / 2)`.
fn gamma_valuation(twice: u64, p: u64) -> i64 {
    let n = twice / 2;
    if twice % 2 == 0 {
        legendre(n - 1, p)
    } else if p == 2 {
        -(n as i64)
    } else {
        legendre(2 * n, p) - legendre(n, p)
    }
}

/// Builds the reduced rational `∏ p^e` from prime valuations.
pub(crate) fn rational_from_valuations(factors: &[(u64, i64)]) -> BigRational {
    let mut num = Vec::new();
    let mut den = Vec::new();
    for &(p, e) in factors {
        if e > 0 {
            num.push(num_traits::pow(BigUint::from(p), e as usize));
        } else if e < 0 {
            den.push(num_traits::pow(BigUint::from(p), (-e) as usize));
        }
    }
    BigRational::new_raw(
        BigInt::from(product_tree(&num)),
        BigInt::from(product_tree(&den)),
    )
}

/// Exact `Γ(a) / Γ(b)`, fully reduced.
pub fn gamma_ratio_exact(a: &HalfInteger, b: &HalfInteger) -> Result<PiTaggedRational> {
    let ta = checked_twice(a)?;
    let tb = checked_twice(b)?;
    if ta == tb {
        return Ok(PiTaggedRational::one());
    }
    let primes = primes_up_to(ta.max(tb));
    let factors: Vec<(u64, i64)> = primes
        .iter()
        .map(|&p| (p, gamma_valuation(ta, p) - gamma_valuation(tb, p)))
        .collect();
    let exp = (ta % 2) as i32 - (tb % 2) as i32;
    Ok(PiTaggedRational::new(rational_from_valuations(&factors), exp))
}

/// Where a computation obtains Γ values. Lets verification swap in a
/// deliberately perturbed source.
pub trait GammaSource {
    fn gamma(&self, z: &HalfInteger) -> Result<PiTaggedRational>;

    fn gamma_ratio(&self, a: &HalfInteger, b: &HalfInteger) -> Result<PiTaggedRational> {
        self.gamma(a)?.checked_div(&self.gamma(b)?)
    }
}

/// The exact lattice Γ of this module.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactGamma;

impl GammaSource for ExactGamma {
    fn gamma(&self, z: &HalfInteger) -> Result<PiTaggedRational> {
        gamma_exact(z)
    }

    fn gamma_ratio(&self, a: &HalfInteger, b: &HalfInteger) -> Result<PiTaggedRational> {
        gamma_ratio_exact(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn pt(num: i64, den: i64, exp: i32) -> PiTaggedRational {
        PiTaggedRational::new(BigRational::new(num.into(), den.into()), exp)
    }

    // Γ by the recurrence zΓ(z) = Γ(z+1) from Γ(1) = 1 and Γ(1/2) = √π,
    // multiplying one factor at a time.
    fn gamma_by_recurrence(twice: u64) -> PiTaggedRational {
        let (mut acc, mut t) = if twice % 2 == 0 { (pt(1, 1, 0), 2) } else { (pt(1, 1, 1), 1) };
        while t < twice {
            acc = acc.mul_rational(&BigRational::new(BigInt::from(t), BigInt::from(2)));
            t += 2;
        }
        acc
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_exact(&HalfInteger::half_odd(0)).unwrap(), pt(1, 1, 1));
        assert_eq!(gamma_exact(&HalfInteger::from_integer(4)).unwrap(), pt(6, 1, 0));
        assert_eq!(gamma_exact(&HalfInteger::half_odd(2)).unwrap(), pt(3, 4, 1));
        assert_eq!(gamma_exact(&HalfInteger::from_integer(1)).unwrap(), pt(1, 1, 0));
    }

    #[test]
    fn gamma_rejects_poles() {
        for t in [0, -1, -2, -7] {
            assert!(matches!(
                gamma_exact(&HalfInteger::from_twice(t)),
                Err(Error::Domain(_))
            ));
        }
        assert!(matches!(
            gamma_exact(&HalfInteger::from_twice(MAX_TWICE_ARGUMENT + 1)),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn ratio_examples() {
        let r = gamma_ratio_exact(&HalfInteger::from_integer(1), &HalfInteger::half_odd(1)).unwrap();
        assert_eq!(r, pt(2, 1, -1));
        let z = HalfInteger::half_odd(3);
        assert_eq!(gamma_ratio_exact(&z, &z).unwrap(), PiTaggedRational::one());
        let r = gamma_ratio_exact(&HalfInteger::half_odd(2), &HalfInteger::from_integer(2)).unwrap();
        assert_eq!(r, pt(3, 4, 1));
    }

    #[test]
    fn double_factorial_examples() {
        assert_eq!(double_factorial(7), BigUint::from(105u32));
        assert_eq!(double_factorial(0), BigUint::one());
        assert_eq!(double_factorial(1), BigUint::one());
        assert_eq!(double_factorial(8), BigUint::from(384u32));
        assert_eq!(factorial(20), BigUint::from(2_432_902_008_176_640_000u64));
    }

    #[test]
    fn matches_recurrence_on_a_range() {
        for twice in 1..=160 {
            let z = HalfInteger::from_twice(twice);
            assert_eq!(gamma_exact(&z).unwrap(), gamma_by_recurrence(twice), "z = {}", z);
        }
    }

    #[test]
    fn valuation_ratio_matches_plain_division() {
        for ta in 1..=60u64 {
            for tb in [1u64, 2, 3, 7, 10, 31, 64] {
                let a = HalfInteger::from_twice(ta);
                let b = HalfInteger::from_twice(tb);
                let direct = gamma_exact(&a).unwrap().checked_div(&gamma_exact(&b).unwrap()).unwrap();
                assert_eq!(gamma_ratio_exact(&a, &b).unwrap(), direct);
                assert_eq!(ExactGamma.gamma_ratio(&a, &b).unwrap(), direct);
            }
        }
    }

    #[test]
    fn legendre_counts() {
        assert_eq!(legendre(10, 2), 8);
        assert_eq!(legendre(100, 5), 24);
        assert_eq!(legendre(4, 5), 0);
    }

    #[test]
    fn valuations_rebuild_rationals() {
        let q = rational_from_valuations(&[(2, 3), (3, -2), (5, 0), (7, 1)]);
        assert_eq!(q, BigRational::new(56.into(), 9.into()));
        assert!(!q.is_zero());
    }

    proptest! {
        #[test]
        fn recurrence_holds(n in 1u64..400) {
            let lower = gamma_exact(&HalfInteger::from_twice(2 * n - 1)).unwrap();
            let upper = gamma_exact(&HalfInteger::from_twice(2 * n + 1)).unwrap();
            let z = BigRational::new(BigInt::from(2 * n - 1), BigInt::from(2));
            prop_assert_eq!(upper, lower.mul_rational(&z));
        }

        #[test]
        fn integer_recurrence_holds(n in 1u64..400) {
            let lower = gamma_exact(&HalfInteger::from_integer(n)).unwrap();
            let upper = gamma_exact(&HalfInteger::from_integer(n + 1)).unwrap();
            prop_assert_eq!(upper, lower.mul_rational(&BigRational::from_integer(n.into())));
        }

        #[test]
        fn double_factorial_step(n in 2u64..2000) {
            prop_assert_eq!(double_factorial(n), double_factorial(n - 2) * n);
        }

        #[test]
        fn ratio_times_inverse_is_one(ta in 1u64..600, tb in 1u64..600) {
            let a = HalfInteger::from_twice(ta);
            let b = HalfInteger::from_twice(tb);
            let ab = gamma_ratio_exact(&a, &b).unwrap();
            let ba = gamma_ratio_exact(&b, &a).unwrap();
            prop_assert_eq!(&ab * &ba, PiTaggedRational::one());
        }
    }
}

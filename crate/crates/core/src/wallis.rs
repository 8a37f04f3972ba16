//! Partial Wallis products, their exact relation to the variational
//! accuracy ratio, and π estimates built from them.
//!
//! `P(L) = ∏_{j=1..L} 4j² / (4j² - 1)` increases to `π/2` and its reciprocal
//! `Q(L)` decreases to `2/π`. The ratio satisfies
//!
//! * `P(ℓ + 1) = (π/2) R(ℓ, 3)`
//! * `R(ℓ, 2k) = (π/2) Q(m) · 2m / (2m + 1)` with `m = ℓ + k`
//!
//! The deficit `1 - 2P(L)/π` behaves like `1/(4L)`. Neither the rate nor
//! the constant is part of the classical limit statements; both follow from
//! the asymptotic expansion of `Γ(a)/Γ(a + 1/2)` and are checked numerically
//! by [`convergence_order`].

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{domain, Error, Result};
use crate::exactnum::{
    legendre, primes_up_to, rational_from_valuations, scale_rational, BigRational, Enclosure,
    HpFloat, PiTaggedRational, Rounding,
};
use crate::variational::{accuracy_ratio, check_dim};

/// Largest `L` accepted in exact mode.
pub const EXACT_TERM_LIMIT: u64 = 100_000;

/// Largest `L` accepted in float mode; keeps `4j²` inside a machine word.
pub const FLOAT_TERM_LIMIT: u64 = 1 << 31;

/// Float products never run below this many bits.
pub const MIN_FLOAT_BITS: u32 = 128;

/// How a partial product is represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backing {
    Exact,
    Float { bits: u32 },
}

impl Backing {
    pub fn float() -> Self {
        Backing::Float { bits: MIN_FLOAT_BITS }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PartialValue {
    Exact(PiTaggedRational),
    Float(Enclosure),
}

/// A partial product with `terms` factors.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialProduct {
    terms: u64,
    value: PartialValue,
}

impl PartialProduct {
    pub fn terms(&self) -> u64 {
        self.terms
    }

    pub fn value(&self) -> &PartialValue {
        &self.value
    }

    pub fn exact(&self) -> Option<&PiTaggedRational> {
        match &self.value {
            PartialValue::Exact(v) => Some(v),
            PartialValue::Float(_) => None,
        }
    }

    pub fn enclosure(&self, bits: u32) -> Enclosure {
        match &self.value {
            PartialValue::Exact(v) => v.enclose(bits),
            PartialValue::Float(e) => e.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.value {
            PartialValue::Exact(v) => v.to_f64(),
            PartialValue::Float(e) => e.midpoint(64).to_f64(),
        }
    }
}

fn check_terms(terms: u64, backing: Backing) -> Result<()> {
    if terms == 0 {
        return Err(domain("a partial product needs at least one factor"));
    }
    let (what, limit) = match backing {
        Backing::Exact => ("exact partial product terms", EXACT_TERM_LIMIT),
        Backing::Float { .. } => ("float partial product terms", FLOAT_TERM_LIMIT),
    };
    if terms > limit {
        return Err(Error::ResourceLimit {
            what,
            requested: terms,
            limit,
        });
    }
    Ok(())
}

/// Exact `P(L) = 16^L (L!)^4 / ((2L)! (2L+1)!)` from prime valuations.
fn exact_direct(terms: u64) -> BigRational {
    let factors: Vec<(u64, i64)> = primes_up_to(2 * terms + 1)
        .into_iter()
        .map(|p| {
            let mut v = 4 * legendre(terms, p) - legendre(2 * terms, p) - legendre(2 * terms + 1, p);
            if p == 2 {
                v += 4 * terms as i64;
            }
            (p, v)
        })
        .collect();
    rational_from_valuations(&factors)
}

/// `P(L) = ∏_{j=1..L} 4j² / ((2j-1)(2j+1))`.
pub fn wallis_partial(terms: u64, backing: Backing) -> Result<PartialProduct> {
    partial(terms, backing, false)
}

/// `Q(L) = ∏_{j=1..L} (2j-1)(2j+1) / 4j² = 1 / P(L)`.
pub fn wallis_reciprocal_partial(terms: u64, backing: Backing) -> Result<PartialProduct> {
    partial(terms, backing, true)
}

fn partial(terms: u64, backing: Backing, reciprocal: bool) -> Result<PartialProduct> {
    check_terms(terms, backing)?;
    let value = match backing {
        Backing::Exact => {
            let p = exact_direct(terms);
            let p = if reciprocal { p.recip() } else { p };
            PartialValue::Exact(PiTaggedRational::from_rational(p))
        }
        Backing::Float { bits } => {
            let mut it = FloatPartials::new(bits, reciprocal);
            let mut last = Enclosure::one();
            for _ in 0..terms {
                last = it.next().expect("unbounded iterator").1;
            }
            PartialValue::Float(last)
        }
    };
    Ok(PartialProduct { terms, value })
}

/// Successive exact partial products `(L, P(L))` or `(L, Q(L))`, L = 1, 2, ...
#[derive(Debug, Clone)]
pub struct ExactPartials {
    j: u64,
    value: BigRational,
    reciprocal: bool,
}

impl ExactPartials {
    pub fn new(reciprocal: bool) -> Self {
        ExactPartials {
            j: 0,
            value: BigRational::one(),
            reciprocal,
        }
    }
}

impl Iterator for ExactPartials {
    type Item = (u64, BigRational);

    fn next(&mut self) -> Option<Self::Item> {
        if self.j >= EXACT_TERM_LIMIT {
            return None;
        }
        self.j += 1;
        let sq = 4 * self.j * self.j;
        self.value = if self.reciprocal {
            scale_rational(&self.value, sq - 1, sq)
        } else {
            scale_rational(&self.value, sq, sq - 1)
        };
        Some((self.j, self.value.clone()))
    }
}

/// Successive certified float partial products, factors applied left to right.
#[derive(Debug, Clone)]
pub struct FloatPartials {
    j: u64,
    bits: u32,
    value: Enclosure,
    reciprocal: bool,
}

impl FloatPartials {
    pub fn new(bits: u32, reciprocal: bool) -> Self {
        FloatPartials {
            j: 0,
            bits: bits.max(MIN_FLOAT_BITS),
            value: Enclosure::one(),
            reciprocal,
        }
    }
}

impl Iterator for FloatPartials {
    type Item = (u64, Enclosure);

    fn next(&mut self) -> Option<Self::Item> {
        if self.j >= FLOAT_TERM_LIMIT {
            return None;
        }
        self.j += 1;
        let sq = 4 * self.j * self.j;
        self.value = if self.reciprocal {
            self.value.mul_ratio(sq - 1, sq, self.bits)
        } else {
            self.value.mul_ratio(sq, sq - 1, self.bits)
        };
        Some((self.j, self.value.clone()))
    }
}

fn half_pi() -> PiTaggedRational {
    PiTaggedRational::new(BigRational::new(BigInt::one(), BigInt::from(2)), 2)
}

/// `(P(ℓ + 1), (π/2) R(ℓ, 3))`; the two entries are equal.
pub fn bridge_odd(ell: u64) -> Result<(PiTaggedRational, PiTaggedRational)> {
    let product = wallis_partial(ell + 1, Backing::Exact)?
        .exact()
        .cloned()
        .expect("exact backing");
    let scaled = &half_pi() * &accuracy_ratio(ell, 3)?;
    Ok((product, scaled))
}

/// `(R(ℓ, 2k), (π/2) Q(m) · 2m/(2m+1))` with `m = ℓ + k`; the two entries
/// are equal.
pub fn bridge_even(ell: u64, k: u64) -> Result<(PiTaggedRational, PiTaggedRational)> {
    if k == 0 {
        return Err(domain("even bridge needs k >= 1"));
    }
    let dim = u32::try_from(2 * k).map_err(|_| domain("dimension out of range"))?;
    let lhs = accuracy_ratio(ell, dim)?;
    let m = ell + k;
    let q = wallis_reciprocal_partial(m, Backing::Exact)?
        .exact()
        .cloned()
        .expect("exact backing");
    let tail = BigRational::new(BigInt::from(2 * m), BigInt::from(2 * m + 1));
    let rhs = (&half_pi() * &q).mul_rational(&tail);
    Ok((lhs, rhs))
}

/// Certified enclosure of `2 P(L)`.
pub fn pi_estimate_enclosure(terms: u64, bits: u32) -> Result<Enclosure> {
    let p = wallis_partial(terms, Backing::Float { bits })?;
    Ok(p.enclosure(bits).mul_ratio(2, 1, bits.max(MIN_FLOAT_BITS)))
}

/// `2 P(L)` at `bits` of precision (at least [`MIN_FLOAT_BITS`]).
pub fn pi_estimate(terms: u64, bits: u32) -> Result<HpFloat> {
    let bits = bits.max(MIN_FLOAT_BITS);
    let e = pi_estimate_enclosure(terms, bits + 16)?;
    Ok(e.midpoint(bits + 16).round(bits, Rounding::NearestEven))
}

/// Least-squares fit `ln(1 - 2P(L)/π) ≈ ln(coeff) + slope · ln L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceFit {
    pub slope: f64,
    pub coeff: f64,
}

/// Fits the decay of the Wallis deficit over a strictly increasing grid.
pub fn convergence_order(grid: &[u64]) -> Result<ConvergenceFit> {
    if grid.len() < 3 {
        return Err(domain(format!(
            "convergence fit needs at least 3 grid points, got {}",
            grid.len()
        )));
    }
    if grid[0] == 0 || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain("grid must be positive and strictly increasing"));
    }
    let last = *grid.last().expect("nonempty");
    check_terms(last, Backing::float())?;

    let bits = MIN_FLOAT_BITS;
    let two_over_pi = Enclosure::pi(bits + 32)
        .recip(bits + 32)
        .expect("pi is nonzero")
        .mul_ratio(2, 1, bits + 32);
    let mut points = Vec::with_capacity(grid.len());
    let mut targets = grid.iter().copied().peekable();
    for (l, p) in FloatPartials::new(bits, false) {
        if targets.peek() == Some(&l) {
            targets.next();
            let deficit = Enclosure::one().sub(&p.mul(&two_over_pi, bits), bits);
            let d = deficit.midpoint(bits).to_f64();
            points.push((libm::log(l as f64), libm::log(d)));
            if targets.peek().is_none() {
                break;
            }
        }
    }

    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = sxy / sxx;
    Ok(ConvergenceFit {
        slope,
        coeff: libm::exp(my - slope * mx),
    })
}

/// `S(a) = ln(Γ(a) / Γ(a + 1/2)) + ln(a)/2` for real `a > 0`.
///
/// Asymptotic series for `a ≥ 20`, upward recurrence below.
pub fn gamma_half_ratio_correction(a: f64) -> f64 {
    if !(a > 0.0) {
        return f64::NAN;
    }
    let mut shift = 0.0;
    let mut x = a;
    while x < 20.0 {
        shift += libm::log1p(0.5 / x) - 0.5 * libm::log1p(1.0 / x);
        x += 1.0;
    }
    let y = 1.0 / (x * x);
    let series = (1.0 / 8.0
        + y * (-1.0 / 192.0
            + y * (1.0 / 640.0 + y * (-17.0 / 14336.0 + y * (31.0 / 18432.0)))))
        / x;
    series + shift
}

/// `1 - R(ℓ, N)` in double precision without cancellation, for any `ℓ`.
pub fn accuracy_deficit(ell: u64, dim: u32) -> Result<f64> {
    check_dim(dim)?;
    let a = ell as f64 + (dim as f64 - 1.0) / 2.0;
    let ln_ratio = 2.0 * gamma_half_ratio_correction(a) - libm::log1p(0.5 / a);
    Ok(-libm::expm1(ln_ratio))
}

/// Certified enclosures of `R(ℓ, N)` for `ℓ = 0, 1, 2, ...`, from the step
/// `R(ℓ+1)/R(ℓ) = (t+2)² / ((t+1)(t+3))` with `t = 2ℓ + N - 1`.
#[derive(Debug, Clone)]
pub struct RatioSweep {
    ell: u64,
    t: u64,
    bits: u32,
    next: Enclosure,
}

impl RatioSweep {
    pub fn new(dim: u32, bits: u32) -> Result<Self> {
        let start = accuracy_ratio(0, dim)?;
        Ok(RatioSweep {
            ell: 0,
            t: dim as u64 - 1,
            bits,
            next: start.enclose(bits + 8),
        })
    }
}

impl Iterator for RatioSweep {
    type Item = (u64, Enclosure);

    fn next(&mut self) -> Option<Self::Item> {
        let t = self.t;
        if t + 3 > u32::MAX as u64 {
            return None;
        }
        let out = (self.ell, self.next.clone());
        self.next = self.next.mul_ratio((t + 2) * (t + 2), (t + 1) * (t + 3), self.bits);
        self.ell += 1;
        self.t += 2;
        Some(out)
    }
}

/// One row of a convergence table.
///
/// For `N = 2k + 1` the partial product is `P(ℓ + k)` and the estimate is
/// `2P`; for `N = 2k` it is `Q(ℓ + k)` and the estimate is `2/Q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRecord {
    pub ell: u64,
    pub dim: u32,
    pub ratio: f64,
    pub partial: f64,
    pub pi_estimate: f64,
}

impl ConvergenceRecord {
    pub fn abs_error(&self) -> f64 {
        libm::fabs(core::f64::consts::PI - self.pi_estimate)
    }
}

/// Records for `ℓ = 0, step, 2·step, ... ≤ ell_max`, in ascending order.
#[derive(Debug, Clone)]
pub struct ScanSweep {
    dim: u32,
    step: u64,
    ell_max: u64,
    bits: u32,
    ratios: RatioSweep,
    partials: FloatPartials,
    partial: Enclosure,
    ell: u64,
}

impl ScanSweep {
    pub fn new(dim: u32, ell_max: u64, step: u64, bits: u32) -> Result<Self> {
        check_dim(dim)?;
        if step == 0 {
            return Err(domain("scan step must be at least 1"));
        }
        let bits = bits.max(MIN_FLOAT_BITS);
        let even = dim % 2 == 0;
        let k = (dim / 2) as u64;
        let mut partials = FloatPartials::new(bits, even);
        let mut partial = Enclosure::one();
        for _ in 0..k {
            partial = partials.next().expect("unbounded").1;
        }
        Ok(ScanSweep {
            dim,
            step,
            ell_max,
            bits,
            ratios: RatioSweep::new(dim, bits)?,
            partials,
            partial,
            ell: 0,
        })
    }
}

impl Iterator for ScanSweep {
    type Item = ConvergenceRecord;

    fn next(&mut self) -> Option<ConvergenceRecord> {
        if self.ell > self.ell_max {
            return None;
        }
        let (ell, ratio) = self.ratios.next()?;
        debug_assert_eq!(ell, self.ell);
        let bits = self.bits;
        let estimate = if self.dim % 2 == 0 {
            self.partial.recip(bits)?.mul_ratio(2, 1, bits)
        } else {
            self.partial.mul_ratio(2, 1, bits)
        };
        let record = ConvergenceRecord {
            ell,
            dim: self.dim,
            ratio: ratio.midpoint(bits).to_f64(),
            partial: self.partial.midpoint(bits).to_f64(),
            pi_estimate: estimate.midpoint(bits).to_f64(),
        };
        for _ in 0..self.step {
            self.partial = self.partials.next()?.1;
        }
        for _ in 1..self.step {
            self.ratios.next()?;
        }
        self.ell += self.step;
        Some(record)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{gamma_exact, HalfInteger};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> PiTaggedRational {
        PiTaggedRational::ratio(n, d)
    }

    fn brute(terms: u64) -> BigRational {
        let mut p = BigRational::one();
        for j in 1..=terms {
            let s = BigInt::from(4 * j * j);
            p *= BigRational::new(s.clone(), s - 1);
        }
        p
    }

    #[test]
    fn partial_examples() {
        let p = |l| wallis_partial(l, Backing::Exact).unwrap().exact().unwrap().clone();
        let r = |l| wallis_reciprocal_partial(l, Backing::Exact).unwrap().exact().unwrap().clone();
        assert_eq!(p(1), q(4, 3));
        assert_eq!(p(2), q(64, 45));
        assert_eq!(p(3), q(256, 175));
        assert_eq!(r(1), q(3, 4));
        assert_eq!(r(2), q(45, 64));
        assert_eq!(r(3), q(175, 256));
        assert!((p(3).to_f64() - 1.462_857).abs() < 1e-6);
    }

    #[test]
    fn partial_errors() {
        assert!(matches!(wallis_partial(0, Backing::Exact), Err(Error::Domain(_))));
        assert!(matches!(wallis_partial(0, Backing::float()), Err(Error::Domain(_))));
        assert!(matches!(
            wallis_partial(EXACT_TERM_LIMIT + 1, Backing::Exact),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn valuations_match_brute_force() {
        for l in 1..120 {
            let p = wallis_partial(l, Backing::Exact).unwrap();
            assert_eq!(p.exact().unwrap().coeff(), &brute(l), "L={l}");
        }
    }

    #[test]
    fn incremental_matches_direct() {
        for (l, p) in ExactPartials::new(false).take(300) {
            assert_eq!(&p, wallis_partial(l, Backing::Exact).unwrap().exact().unwrap().coeff());
        }
        for (l, p) in ExactPartials::new(true).take(50) {
            assert_eq!(p, brute(l).recip());
        }
    }

    #[test]
    fn float_encloses_exact() {
        for l in [1, 2, 7, 100, 1000] {
            let exact = wallis_partial(l, Backing::Exact).unwrap().exact().unwrap().clone();
            let x = exact.to_float(200).unwrap();
            let f = wallis_partial(l, Backing::Float { bits: 160 }).unwrap();
            assert!(f.enclosure(160).contains(&x), "L={l}");
            let r = wallis_reciprocal_partial(l, Backing::float()).unwrap();
            let rx = exact.checked_recip().unwrap().to_float(200).unwrap();
            assert!(r.enclosure(128).contains(&rx));
        }
    }

    #[test]
    fn bridge_odd_examples() {
        let (a, b) = bridge_odd(0).unwrap();
        assert_eq!(a, q(4, 3));
        assert_eq!(a, b);
        let (a, b) = bridge_odd(1).unwrap();
        assert_eq!(a, q(64, 45));
        assert_eq!(a, b);
        for ell in 2..60 {
            let (a, b) = bridge_odd(ell).unwrap();
            assert_eq!(a, b, "ell={ell}");
        }
    }

    // Independent route: Γ values by themselves and Q by repeated
    // multiplication.
    #[test]
    fn bridge_even_brute_force() {
        let (a, b) = bridge_even(0, 1).unwrap();
        assert_eq!(a, PiTaggedRational::new(BigRational::new(1.into(), 4.into()), 2));
        assert_eq!(a, b);
        for k in 1..=6u64 {
            for ell in 0..=25u64 {
                let dim = 2 * k;
                let a2 = BigInt::from(2 * ell + dim - 1);
                let g = gamma_exact(&HalfInteger::from_twice(a2.clone()))
                    .unwrap()
                    .checked_div(&gamma_exact(&HalfInteger::from_twice(&a2 + 1)).unwrap())
                    .unwrap();
                let pre = BigRational::new(&a2 * &a2, (&a2 + 1) * 2);
                let lhs = (&g * &g).mul_rational(&pre);
                let m = ell + k;
                let rhs = PiTaggedRational::new(
                    brute(m).recip() * BigRational::new(BigInt::from(m), BigInt::from(2 * m + 1)),
                    2,
                );
                assert_eq!(lhs, rhs, "ell={ell} k={k}");
                let (l2, r2) = bridge_even(ell, k).unwrap();
                assert_eq!(l2, lhs);
                assert_eq!(r2, rhs);
            }
        }
        assert!(bridge_even(0, 0).is_err());
    }

    #[test]
    fn pi_estimate_examples() {
        let e = pi_estimate(1, 128).unwrap();
        assert!((e.to_f64() - 8.0 / 3.0).abs() < 1e-15);
        let e = pi_estimate(100, 128).unwrap().to_f64();
        let oracle = 2.0 * brute(100).to_f64_approx();
        assert!((e - oracle).abs() < 1e-14);
        assert!((e - 3.133_787).abs() < 1e-6);
        let a = pi_estimate(100, 256).unwrap();
        let b = pi_estimate(100, 256).unwrap();
        assert_eq!(a, b);
        assert!(pi_estimate(0, 128).is_err());
    }

    trait ApproxF64 {
        fn to_f64_approx(&self) -> f64;
    }

    impl ApproxF64 for BigRational {
        fn to_f64_approx(&self) -> f64 {
            HpFloat::from_rational(self, 60, Rounding::NearestEven).to_f64()
        }
    }

    #[test]
    fn pi_estimates_increase_below_pi() {
        let pi = Enclosure::pi(160);
        let mut prev: Option<Enclosure> = None;
        for (_, p) in FloatPartials::new(128, false).take(5000) {
            let e = p.mul_ratio(2, 1, 128);
            assert_eq!(e.certain_cmp(&pi), Some(core::cmp::Ordering::Less));
            if let Some(prev) = prev {
                assert_eq!(prev.certain_cmp(&e), Some(core::cmp::Ordering::Less));
            }
            prev = Some(e);
        }
    }

    #[test]
    fn convergence_small_grid() {
        let fit = convergence_order(&[10, 20, 40]).unwrap();
        assert!(fit.slope > -1.1 && fit.slope < -0.9, "{fit:?}");
        assert!(convergence_order(&[10, 20]).is_err());
        assert!(convergence_order(&[10, 10, 20]).is_err());
        assert!(convergence_order(&[0, 10, 20]).is_err());
    }

    #[test]
    fn convergence_coefficient_near_quarter() {
        let fit = convergence_order(&[1000, 2000, 4000, 8000]).unwrap();
        assert!((fit.slope + 1.0).abs() < 1e-3, "{fit:?}");
        assert!((fit.coeff - 0.25).abs() < 1e-3, "{fit:?}");
    }

    #[test]
    fn log_space_matches_exact() {
        for dim in 2..=9 {
            for ell in (0..80).chain([150, 400]) {
                let exact = accuracy_ratio(ell, dim).unwrap();
                let deficit = Enclosure::one().sub(&exact.enclose(160), 160).midpoint(160).to_f64();
                let fast = accuracy_deficit(ell, dim).unwrap();
                assert!((fast - deficit).abs() <= 1e-14 * deficit, "ell={ell} dim={dim}");
            }
        }
        // S(1/2) = ln(√π) - ln(2)/2
        let s = gamma_half_ratio_correction(0.5);
        assert!((s - 0.5 * (core::f64::consts::PI / 2.0).ln()).abs() < 1e-15);
        assert!(gamma_half_ratio_correction(0.0).is_nan());
    }

    #[test]
    fn ratio_sweep_encloses_exact() {
        for dim in [2, 3, 6] {
            for (ell, e) in RatioSweep::new(dim, 128).unwrap().take(40) {
                let x = accuracy_ratio(ell, dim).unwrap().to_float(200).unwrap();
                assert!(e.contains(&x), "ell={ell} dim={dim}");
            }
        }
    }

    #[test]
    fn scan_records() {
        let recs: Vec<_> = ScanSweep::new(3, 2, 1, 128).unwrap().collect();
        assert_eq!(recs.len(), 3);
        assert!((recs[0].ratio - 0.848_826).abs() < 1e-6);
        assert!((recs[0].partial - 4.0 / 3.0).abs() < 1e-15);
        assert!((recs[0].pi_estimate - 8.0 / 3.0).abs() < 1e-15);
        assert_eq!(recs[0].abs_error(), (core::f64::consts::PI - recs[0].pi_estimate).abs());

        let ells: Vec<_> = ScanSweep::new(3, 10, 5, 128).unwrap().map(|r| r.ell).collect();
        assert_eq!(ells, [0, 5, 10]);

        let recs: Vec<_> = ScanSweep::new(2, 0, 1, 128).unwrap().collect();
        assert_eq!(recs.len(), 1);
        assert!((recs[0].ratio - core::f64::consts::PI / 4.0).abs() < 1e-15);
        assert!((recs[0].partial - 0.75).abs() < 1e-15);

        for dim in [2, 3, 4, 7] {
            for r in ScanSweep::new(dim, 30, 3, 128).unwrap() {
                let exact = accuracy_ratio(r.ell, dim).unwrap().to_f64();
                assert!((r.ratio - exact).abs() <= 1e-16 * exact.max(1.0) * 2.0);
                let k = (dim / 2) as u64;
                let p = brute(r.ell + k).to_f64_approx();
                let want = if dim % 2 == 0 { 1.0 / p } else { p };
                assert!((r.partial - want).abs() < 1e-15 * want);
            }
        }
        assert!(ScanSweep::new(3, 5, 0, 128).is_err());
        assert!(ScanSweep::new(1, 5, 1, 128).is_err());
    }

    proptest! {
        #[test]
        fn exact_duality(l in 1u64..400) {
            let p = wallis_partial(l, Backing::Exact).unwrap().exact().unwrap().clone();
            let r = wallis_reciprocal_partial(l, Backing::Exact).unwrap().exact().unwrap().clone();
            prop_assert_eq!(&p * &r, PiTaggedRational::one());
        }

        #[test]
        fn bracketing(l in 1u64..300) {
            let p = |l| wallis_partial(l, Backing::Exact).unwrap().exact().unwrap().clone();
            let half_pi = half_pi();
            prop_assert!(p(l) < p(l + 1));
            prop_assert!(p(l + 1) < half_pi);
            let two_over_pi = half_pi.checked_recip().unwrap();
            let r = |l| wallis_reciprocal_partial(l, Backing::Exact).unwrap().exact().unwrap().clone();
            prop_assert!(r(l + 1) < r(l));
            prop_assert!(r(l) > two_over_pi);
        }
    }
}

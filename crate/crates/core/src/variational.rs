//! The Gaussian trial state `r^ℓ e^{-β r²}` for the N-dimensional hydrogen
//! atom, its optimum, and how close that optimum comes to the true ground
//! level of each angular-momentum sector.
//!
//! With `a = ℓ + (N-1)/2` and `G = Γ(a) / Γ(a + 1/2)`:
//!
//! * `⟨H⟩(β) = 2β(ℓ + N/2) - 2G√(2β)`
//! * minimum at `β* = G² / (2(ℓ + N/2)²)` with `E_min = -G² / (ℓ + N/2)`
//! * exact levels `E = -1 / (n_r + a)²`
//! * accuracy ratio `E_min / E(n_r = 0) = a² G² / (a + 1/2)`

use alloc::format;

use num_bigint::BigInt;

use crate::error::{domain, Result};
use crate::exactnum::{
    BigRational, ExactGamma, GammaSource, HalfInteger, PiTaggedRational,
};
use crate::wallis;

/// `(n_r, ℓ, N)`: radial node count, angular momentum and dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    n_r: u64,
    ell: u64,
    dim: u32,
}

impl QuantumNumbers {
    pub fn new(n_r: u64, ell: u64, dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(QuantumNumbers { n_r, ell, dim })
    }

    pub fn n_r(&self) -> u64 {
        self.n_r
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// `n_r + ℓ + (N-1)/2`, the effective principal quantum number.
    pub fn effective_n(&self) -> f64 {
        self.n_r as f64 + self.ell as f64 + (self.dim as f64 - 1.0) / 2.0
    }
}

/// A Gaussian trial state with dimensionless exponent `β > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialState {
    beta: f64,
    ell: u64,
    dim: u32,
}

impl TrialState {
    pub fn new(beta: f64, ell: u64, dim: u32) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(domain(format!("trial exponent must be positive and finite, got {beta}")));
        }
        check_dim(dim)?;
        Ok(TrialState { beta, ell, dim })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }
}

/// An energy in units of `m e⁴ / 2ħ²`.
#[derive(Debug, Clone, PartialEq)]
pub enum EnergyValue {
    Exact(PiTaggedRational),
    Float(f64),
}

impl EnergyValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            EnergyValue::Exact(v) => v.to_f64(),
            EnergyValue::Float(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&PiTaggedRational> {
        match self {
            EnergyValue::Exact(v) => Some(v),
            EnergyValue::Float(_) => None,
        }
    }
}

/// The optimal Gaussian exponent and the resulting upper bound.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticMinimum {
    pub beta_star: f64,
    pub energy: EnergyValue,
}

pub(crate) fn check_dim(dim: u32) -> Result<()> {
    if dim < 2 {
        return Err(domain(format!("dimension must be at least 2, got {dim}")));
    }
    Ok(())
}

/// `(ℓ + (N-1)/2, ℓ + N/2)`, the Γ arguments of the bound.
pub fn gamma_arguments(ell: u64, dim: u32) -> (HalfInteger, HalfInteger) {
    let twice_a = BigInt::from(2 * ell + dim as u64 - 1);
    (
        HalfInteger::from_twice(twice_a.clone()),
        HalfInteger::from_twice(twice_a + 1),
    )
}

/// Exact `G = Γ(ℓ + (N-1)/2) / Γ(ℓ + N/2)`.
pub fn gamma_ratio_g(ell: u64, dim: u32) -> Result<PiTaggedRational> {
    check_dim(dim)?;
    let (a, b) = gamma_arguments(ell, dim);
    ExactGamma.gamma_ratio(&a, &b)
}

/// `G` in double precision, a few ulps from the correctly rounded value.
pub fn gamma_ratio_g_f64(ell: u64, dim: u32) -> f64 {
    let a = ell as f64 + (dim as f64 - 1.0) / 2.0;
    libm::exp(wallis::gamma_half_ratio_correction(a) - 0.5 * libm::log(a))
}

/// `ℓ + N/2`.
fn shell(ell: u64, dim: u32) -> f64 {
    ell as f64 + dim as f64 / 2.0
}

/// `⟨H⟩` of the trial state: `2β(ℓ + N/2) - 2G√(2β)`.
pub fn expectation_energy(s: &TrialState) -> EnergyValue {
    let g = gamma_ratio_g_f64(s.ell, s.dim);
    let x = libm::sqrt(2.0 * s.beta);
    EnergyValue::Float(shell(s.ell, s.dim) * x * x - 2.0 * g * x)
}

/// Minimum of [`expectation_energy`] over `β`, with the energy exact.
pub fn analytic_minimum(ell: u64, dim: u32) -> Result<AnalyticMinimum> {
    let g = gamma_ratio_g(ell, dim)?;
    let shell_q = BigRational::new(BigInt::from(2 * ell + dim as u64), BigInt::from(2));
    let energy = -(&g * &g).mul_rational(&shell_q.recip());
    let g_f = gamma_ratio_g_f64(ell, dim);
    let s = shell(ell, dim);
    Ok(AnalyticMinimum {
        beta_star: g_f * g_f / (2.0 * s * s),
        energy: EnergyValue::Exact(energy),
    })
}

/// `-1 / (n_r + ℓ + (N-1)/2)²`, exactly.
pub fn exact_energy(q: &QuantumNumbers) -> EnergyValue {
    let twice_n = BigInt::from(2 * (q.n_r + q.ell) + q.dim as u64 - 1);
    let e = BigRational::new(BigInt::from(-4), &twice_n * &twice_n);
    EnergyValue::Exact(PiTaggedRational::from_rational(e))
}

/// `E_min / E(0, ℓ, N) = (ℓ+(N-1)/2)² / (ℓ+N/2) · G²`, exactly.
pub fn accuracy_ratio(ell: u64, dim: u32) -> Result<PiTaggedRational> {
    accuracy_ratio_with(&ExactGamma, ell, dim)
}

/// [`accuracy_ratio`] with Γ values taken from `gamma`.
pub fn accuracy_ratio_with<G: GammaSource + ?Sized>(
    gamma: &G,
    ell: u64,
    dim: u32,
) -> Result<PiTaggedRational> {
    check_dim(dim)?;
    let (a, b) = gamma_arguments(ell, dim);
    let g = gamma.gamma_ratio(&a, &b)?;
    let twice_a = BigInt::from(2 * ell + dim as u64 - 1);
    // a² / (a + 1/2) = (2a)² / (2 (2a + 1))
    let prefactor = BigRational::new(&twice_a * &twice_a, (&twice_a + 1) * 2);
    Ok((&g * &g).mul_rational(&prefactor))
}

/// Both sides of the odd-dimension reduction: the ratio in `N = 2k+1`
/// dimensions at `ℓ` and the three-dimensional ratio at `ℓ + k - 1`.
pub fn dimension_shift_identity(
    ell: u64,
    k: u64,
) -> Result<(PiTaggedRational, PiTaggedRational)> {
    if k == 0 {
        return Err(domain("dimension shift needs k >= 1"));
    }
    let dim = u32::try_from(2 * k + 1).map_err(|_| domain("dimension out of range"))?;
    Ok((accuracy_ratio(ell, dim)?, accuracy_ratio(ell + k - 1, 3)?))
}

/// Relative spread of `r²` in the trial state, `(ℓ + N/2)^(-1/2)`. It does
/// not depend on `β`.
pub fn uncertainty_ratio(ell: u64, dim: u32) -> Result<f64> {
    check_dim(dim)?;
    Ok(1.0 / libm::sqrt(shell(ell, dim)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{gamma_exact, Rounding};
    use proptest::prelude::*;

    fn pt(num: i64, den: i64, exp: i32) -> PiTaggedRational {
        PiTaggedRational::new(BigRational::new(num.into(), den.into()), exp)
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    #[test]
    fn expectation_examples() {
        let e = expectation_energy(&TrialState::new(0.5, 0, 3).unwrap()).to_f64();
        let oracle = 1.5 - 4.0 / core::f64::consts::PI.sqrt();
        assert!(close(e, oracle, 1e-15), "{e} vs {oracle}");
        assert!((e + 0.756_758).abs() < 1e-6);

        for (ell, dim) in [(0, 3), (2, 5), (7, 2)] {
            let g = gamma_ratio_g_f64(ell, dim);
            let s = shell(ell, dim);
            let root = 2.0 * (g / s) * (g / s);
            let e = expectation_energy(&TrialState::new(root, ell, dim).unwrap()).to_f64();
            assert!(e.abs() < 1e-14, "second root gives {e}");
        }

        let beta = 8.0 / (9.0 * core::f64::consts::PI);
        let e = expectation_energy(&TrialState::new(beta, 0, 3).unwrap()).to_f64();
        assert!(close(e, -8.0 / (3.0 * core::f64::consts::PI), 1e-15));
    }

    #[test]
    fn trial_state_validation() {
        assert!(TrialState::new(0.0, 0, 3).is_err());
        assert!(TrialState::new(-1.0, 0, 3).is_err());
        assert!(TrialState::new(f64::NAN, 0, 3).is_err());
        assert!(TrialState::new(1.0, 0, 1).is_err());
        assert!(QuantumNumbers::new(0, 0, 1).is_err());
    }

    #[test]
    fn analytic_minimum_examples() {
        let m = analytic_minimum(0, 3).unwrap();
        assert_eq!(m.energy.exact().unwrap(), &pt(-8, 3, -2));
        assert!(close(m.beta_star, 8.0 / (9.0 * core::f64::consts::PI), 1e-15));
        assert!((m.energy.to_f64() + 0.848_826).abs() < 1e-6);

        let m = analytic_minimum(0, 2).unwrap();
        assert_eq!(m.energy.exact().unwrap(), &pt(-1, 1, 2));

        // Γ(2) = 1, Γ(5/2) = 3√π/4: E_min = -(2/5) · 16/(9π) = -32/(45π)
        let m = analytic_minimum(1, 3).unwrap();
        assert_eq!(m.energy.exact().unwrap(), &pt(-32, 45, -2));
        assert!((m.energy.to_f64() + 0.226_354).abs() < 1e-6);
    }

    #[test]
    fn exact_energy_examples() {
        let e = |n, l, d| exact_energy(&QuantumNumbers::new(n, l, d).unwrap()).exact().unwrap().clone();
        assert_eq!(e(0, 0, 3), pt(-1, 1, 0));
        assert_eq!(e(0, 0, 2), pt(-4, 1, 0));
        assert_eq!(e(1, 1, 4), pt(-4, 49, 0));
        assert_eq!(e(0, 1, 3), pt(-1, 4, 0));
    }

    #[test]
    fn accuracy_ratio_examples() {
        assert_eq!(accuracy_ratio(0, 3).unwrap(), pt(8, 3, -2));
        assert_eq!(accuracy_ratio(0, 2).unwrap(), pt(1, 4, 2));
        assert_eq!(accuracy_ratio(1, 3).unwrap(), pt(128, 45, -2));
        assert!((accuracy_ratio(1, 3).unwrap().to_f64() - 0.905_415).abs() < 1e-6);
        assert!((accuracy_ratio(0, 2).unwrap().to_f64() - 0.785_398).abs() < 1e-6);
    }

    #[test]
    fn ratio_is_minimum_over_exact_level() {
        for dim in 2..=9 {
            for ell in 0..25 {
                let m = analytic_minimum(ell, dim).unwrap();
                let e0 = exact_energy(&QuantumNumbers::new(0, ell, dim).unwrap());
                let ratio = m.energy.exact().unwrap().checked_div(e0.exact().unwrap()).unwrap();
                assert_eq!(ratio, accuracy_ratio(ell, dim).unwrap(), "ell={ell} dim={dim}");
            }
        }
    }

    // Brute-force route: the ratio from plain Γ values, divided directly.
    #[test]
    fn ratio_from_unreduced_gammas() {
        for dim in 2..=7u32 {
            for ell in 0..15u64 {
                let (a, b) = gamma_arguments(ell, dim);
                let g = gamma_exact(&a).unwrap().checked_div(&gamma_exact(&b).unwrap()).unwrap();
                let a_q = a.to_rational();
                let b_q = b.to_rational();
                let direct = (&g * &g).mul_rational(&(&a_q * &a_q / b_q));
                assert_eq!(direct, accuracy_ratio(ell, dim).unwrap());
            }
        }
    }

    #[test]
    fn ratio_strictly_inside_unit_interval_and_increasing() {
        let zero = PiTaggedRational::zero();
        let one = PiTaggedRational::one();
        for dim in 2..=12 {
            let mut prev = zero.clone();
            for ell in 0..=150 {
                let r = accuracy_ratio(ell, dim).unwrap();
                assert!(r > zero && r < one, "ell={ell} dim={dim}");
                assert!(r > prev, "not increasing at ell={ell} dim={dim}");
                prev = r;
            }
        }
    }

    #[test]
    fn dimension_shift_examples() {
        let (l, r) = dimension_shift_identity(0, 2).unwrap();
        assert_eq!(l, r);
        assert_eq!(l, accuracy_ratio(1, 3).unwrap());
        let (l, r) = dimension_shift_identity(3, 1).unwrap();
        assert_eq!(l, r);
        let (l, r) = dimension_shift_identity(2, 3).unwrap();
        assert_eq!(l, accuracy_ratio(4, 3).unwrap());
        assert_eq!(l, r);
        assert!(dimension_shift_identity(0, 0).is_err());
    }

    #[test]
    fn uncertainty_examples() {
        assert!((uncertainty_ratio(0, 3).unwrap() - 0.816_497).abs() < 1e-6);
        assert_eq!(uncertainty_ratio(0, 2).unwrap(), 1.0);
        let big = uncertainty_ratio(1_000_000, 3).unwrap();
        assert!((big - 1.0 / (1_000_001.5f64).sqrt()).abs() < 1e-18);
        assert!(big < 1e-3);
    }

    #[test]
    fn float_g_matches_exact() {
        for dim in 2..=12 {
            for ell in (0..60).chain([100, 1000, 12345]) {
                let exact = gamma_ratio_g(ell, dim).unwrap().to_float(64).unwrap();
                let exact = exact.round(53, Rounding::NearestEven).to_f64();
                let fast = gamma_ratio_g_f64(ell, dim);
                assert!(close(fast, exact, 8e-16), "ell={ell} dim={dim}: {fast} vs {exact}");
            }
        }
    }

    proptest! {
        #[test]
        fn variational_bound_holds(beta in 1e-4f64..1e3, ell in 0u64..12, dim in 2u32..8) {
            let e = expectation_energy(&TrialState::new(beta, ell, dim).unwrap()).to_f64();
            let e0 = exact_energy(&QuantumNumbers::new(0, ell, dim).unwrap()).to_f64();
            prop_assert!(e > e0);
        }

        #[test]
        fn perturbed_beta_raises_energy(ell in 0u64..20, dim in 2u32..9, up in proptest::bool::ANY) {
            let m = analytic_minimum(ell, dim).unwrap();
            let beta = m.beta_star * if up { 1.0 + 1e-3 } else { 1.0 - 1e-3 };
            let e = expectation_energy(&TrialState::new(beta, ell, dim).unwrap()).to_f64();
            prop_assert!(e > m.energy.to_f64());
        }
    }
}

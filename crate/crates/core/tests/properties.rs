use hydrowallis::oracles::{quadrature_expectation, QuadratureSpec};
use hydrowallis::{
    accuracy_ratio, analytic_minimum, bridge_even, bridge_odd, dimension_shift_identity,
    exact_energy, expectation_energy, gamma_exact, wallis_partial, wallis_reciprocal_partial,
    Backing, HalfInteger, PiTaggedRational, QuantumNumbers, TrialState,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn odd_bridge(ell in 0u64..1500) {
        let (a, b) = bridge_odd(ell).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn even_bridge(ell in 0u64..400, k in 1u64..30) {
        let (a, b) = bridge_even(ell, k).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn dimension_shift(ell in 0u64..400, k in 1u64..30) {
        let (a, b) = dimension_shift_identity(ell, k).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn gamma_recurrence(twice in 1u64..2000) {
        let z = HalfInteger::from_twice(twice);
        let next = gamma_exact(&z.add_integer(1)).unwrap();
        let scaled = gamma_exact(&z).unwrap().mul_rational(&z.to_rational());
        prop_assert_eq!(next, scaled);
    }

    #[test]
    fn duality_and_bracketing(l in 1u64..2000) {
        let p = wallis_partial(l, Backing::Exact).unwrap().exact().unwrap().clone();
        let q = wallis_reciprocal_partial(l, Backing::Exact).unwrap().exact().unwrap().clone();
        prop_assert_eq!(&p * &q, PiTaggedRational::one());
        let half_pi = PiTaggedRational::ratio(1, 2) * PiTaggedRational::pi();
        prop_assert!(p < half_pi);
        prop_assert!(q > half_pi.checked_recip().unwrap());
    }

    #[test]
    fn ratio_below_one(ell in 0u64..3000, dim in 2u32..40) {
        let r = accuracy_ratio(ell, dim).unwrap();
        prop_assert!(r < PiTaggedRational::one());
        prop_assert!(r > PiTaggedRational::zero());
    }

    #[test]
    fn quadrature_agrees(ln_beta in -4.0f64..4.0, ell in 0u64..=20, dim in 2u32..=8) {
        let s = TrialState::new(ln_beta.exp(), ell, dim).unwrap();
        let q = quadrature_expectation(&s, &QuadratureSpec::default()).unwrap().to_f64();
        let a = expectation_energy(&s).to_f64();
        prop_assert!(((q - a) / a).abs() < 1e-10 || (q - a).abs() < 1e-12);
    }

    #[test]
    fn bound_above_exact_level(ell in 0u64..50, dim in 2u32..12) {
        let m = analytic_minimum(ell, dim).unwrap();
        let e0 = exact_energy(&QuantumNumbers::new(0, ell, dim).unwrap());
        prop_assert!(m.energy.exact().unwrap() > e0.exact().unwrap());
    }
}

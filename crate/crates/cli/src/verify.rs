//! The `verify` command: named checks of the exact identities and the
//! numerical oracles.

use std::cmp::Ordering;
use std::io::Write;

use hydrowallis::exactnum::{BigInt, BigRational, Enclosure, HalfInteger};
use hydrowallis::oracles::{
    numeric_minimize, quadrature_expectation, quadrature_uncertainty, radial_eigensolve,
    EigensolverSpec, QuadratureSpec,
};
use hydrowallis::variational::accuracy_ratio_with;
use hydrowallis::wallis::{ExactPartials, FloatPartials, RatioSweep};
use hydrowallis::{
    analytic_minimum, convergence_order, exact_energy, expectation_energy, pi_estimate_enclosure,
    uncertainty_ratio, wallis_partial, wallis_reciprocal_partial, Backing, ExactGamma,
    GammaSource, PiTaggedRational, QuantumNumbers, TrialState,
};

use crate::formats::format_f64;
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }

    fn push(&mut self, name: &'static str, measured: f64, tolerance: f64) {
        self.checks.push(Check {
            name,
            passed: measured <= tolerance,
            measured,
            tolerance,
        });
    }

    fn push_result(&mut self, name: &'static str, r: hydrowallis::Result<f64>, tolerance: f64) {
        self.push(name, r.unwrap_or(f64::INFINITY), tolerance);
    }
}

/// Γ source that scales every half-odd value by `1 + 2^-52`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PerturbedGamma;

impl GammaSource for PerturbedGamma {
    fn gamma(&self, z: &HalfInteger) -> hydrowallis::Result<PiTaggedRational> {
        let g = ExactGamma.gamma(z)?;
        if z.is_integer() {
            return Ok(g);
        }
        let ulp = BigInt::from(1u64 << 52);
        Ok(g.mul_rational(&BigRational::new(&ulp + 1, ulp)))
    }
}

fn half_pi() -> PiTaggedRational {
    PiTaggedRational::new(BigRational::new(1.into(), 2.into()), 2)
}

fn exact(p: hydrowallis::Result<hydrowallis::PartialProduct>) -> hydrowallis::Result<PiTaggedRational> {
    Ok(p?.exact().cloned().expect("exact backing"))
}

fn bridge_odd_mismatches(gamma: &dyn GammaSource, ell_max: u64) -> hydrowallis::Result<f64> {
    let mut bad = 0;
    for ell in 0..=ell_max {
        let product = exact(wallis_partial(ell + 1, Backing::Exact))?;
        let scaled = &half_pi() * &accuracy_ratio_with(gamma, ell, 3)?;
        if product != scaled {
            bad += 1;
        }
    }
    Ok(bad as f64)
}

fn bridge_even_mismatches(gamma: &dyn GammaSource, ell_max: u64, k_max: u64) -> hydrowallis::Result<f64> {
    let mut bad = 0;
    for k in 1..=k_max {
        for ell in 0..=ell_max {
            let m = ell + k;
            let lhs = accuracy_ratio_with(gamma, ell, 2 * k as u32)?;
            let q = exact(wallis_reciprocal_partial(m, Backing::Exact))?;
            let tail = BigRational::new(BigInt::from(2 * m), BigInt::from(2 * m + 1));
            if lhs != (&half_pi() * &q).mul_rational(&tail) {
                bad += 1;
            }
        }
    }
    Ok(bad as f64)
}

fn dimension_shift_mismatches(gamma: &dyn GammaSource, ell_max: u64, k_max: u64) -> hydrowallis::Result<f64> {
    let mut bad = 0;
    for k in 1..=k_max {
        for ell in 0..=ell_max {
            let odd = accuracy_ratio_with(gamma, ell, 2 * k as u32 + 1)?;
            if odd != accuracy_ratio_with(gamma, ell + k - 1, 3)? {
                bad += 1;
            }
        }
    }
    Ok(bad as f64)
}

fn duality_mismatches(l_max: usize) -> f64 {
    ExactPartials::new(false)
        .zip(ExactPartials::new(true))
        .take(l_max)
        .filter(|((_, p), (_, q))| p.numer() != q.denom() || p.denom() != q.numer())
        .count() as f64
}

fn monotone_exact_violations(l_max: usize) -> f64 {
    let half_pi = half_pi();
    let two_over_pi = half_pi.checked_recip().expect("nonzero");
    let mut bad = 0;
    let mut prev: Option<(PiTaggedRational, PiTaggedRational)> = None;
    for ((_, p), (_, q)) in ExactPartials::new(false).zip(ExactPartials::new(true)).take(l_max) {
        let p = PiTaggedRational::from_rational(p);
        let q = PiTaggedRational::from_rational(q);
        if p >= half_pi || q <= two_over_pi {
            bad += 1;
        }
        if let Some((pp, pq)) = &prev {
            if !(pp < &p && &q < pq) {
                bad += 1;
            }
        }
        prev = Some((p, q));
    }
    bad as f64
}

fn monotone_float_violations(l_max: u64) -> f64 {
    let bits = 128;
    let pi = Enclosure::pi(bits + 32);
    let mut bad = 0;
    let mut prev: Option<Enclosure> = None;
    for (_, p) in FloatPartials::new(bits, false).take(l_max as usize) {
        let est = p.mul_ratio(2, 1, bits);
        if est.certain_cmp(&pi) != Some(Ordering::Less) {
            bad += 1;
        }
        if let Some(prev) = &prev {
            if prev.certain_cmp(&est) != Some(Ordering::Less) {
                bad += 1;
            }
        }
        prev = Some(est);
    }
    bad as f64
}

/// Largest `2ℓ (1 - R(ℓ, 3))` over `10 ≤ ℓ ≤ ell_max`; below 1 when the
/// deficit stays under `1/(2ℓ)`.
fn ratio_limit(ell_max: u64) -> hydrowallis::Result<f64> {
    let bits = 256;
    let one = Enclosure::one();
    let mut worst = 0.0f64;
    for (ell, r) in RatioSweep::new(3, bits)?.take(ell_max as usize + 1).skip(10) {
        let scaled = one.sub(&r, bits).mul_ratio(2 * ell, 1, bits);
        worst = worst.max(scaled.hi().to_f64());
    }
    Ok(worst)
}

/// `|(π - 2P(L)) / (π/(4L)) - 1|`.
fn pi_deficit_gap(terms: u64) -> hydrowallis::Result<f64> {
    let est = pi_estimate_enclosure(terms, 128)?;
    let pi = Enclosure::pi(160);
    let err = pi.sub(&est, 128).midpoint(128).to_f64();
    Ok((err / (std::f64::consts::PI / (4.0 * terms as f64)) - 1.0).abs())
}

fn quadrature_worst(cases: &[(u64, u32)], scales: &[f64]) -> hydrowallis::Result<f64> {
    let spec = QuadratureSpec::default();
    let mut worst = 0.0f64;
    for &(ell, dim) in cases {
        let star = analytic_minimum(ell, dim)?.beta_star;
        for &s in scales {
            let t = TrialState::new(star * s, ell, dim)?;
            let q = quadrature_expectation(&t, &spec)?.to_f64();
            let a = expectation_energy(&t).to_f64();
            worst = worst.max(((q - a) / a).abs());
        }
    }
    Ok(worst)
}

/// Largest eigenvalue error in units of its tolerance.
fn eigen_worst(states: &[(u64, u64, u32)]) -> hydrowallis::Result<f64> {
    let spec = EigensolverSpec::default();
    let mut worst = 0.0f64;
    for &(n_r, ell, dim) in states {
        let q = QuantumNumbers::new(n_r, ell, dim)?;
        let e = radial_eigensolve(&q, &spec)?;
        let tol = if dim == 2 && ell == 0 { 1e-5 } else { 1e-6 };
        worst = worst.max((e.value - exact_energy(&q).to_f64()).abs() / tol);
    }
    Ok(worst)
}

fn eigen_bound_violation() -> hydrowallis::Result<f64> {
    let spec = EigensolverSpec::new(4000, 1e-4)?;
    let mut worst = f64::NEG_INFINITY;
    for dim in 2..=6 {
        for ell in 0..=5 {
            let e = radial_eigensolve(&QuantumNumbers::new(0, ell, dim)?, &spec)?;
            let bound = analytic_minimum(ell, dim)?.energy.to_f64();
            worst = worst.max(e.value - bound - e.error_estimate);
        }
    }
    Ok(worst.max(0.0))
}

fn minimize_worst() -> hydrowallis::Result<f64> {
    let mut worst = 0.0f64;
    for dim in 2..=8 {
        for ell in 0..=20 {
            let m = analytic_minimum(ell, dim)?;
            let (beta, e) = numeric_minimize(ell, dim, 1e-8)?;
            let e_min = m.energy.to_f64();
            worst = worst
                .max((beta - m.beta_star).abs() / m.beta_star)
                .max((e.to_f64() - e_min).abs() / e_min.abs());
        }
    }
    Ok(worst)
}

fn variational_violations() -> hydrowallis::Result<f64> {
    let mut bad = 0;
    for dim in 2..=6 {
        for ell in 0..=10 {
            let e0 = exact_energy(&QuantumNumbers::new(0, ell, dim)?).to_f64();
            for i in 0..1000 {
                let beta = 10f64.powf(-4.0 + 7.0 * i as f64 / 999.0);
                if !(expectation_energy(&TrialState::new(beta, ell, dim)?).to_f64() > e0) {
                    bad += 1;
                }
            }
        }
    }
    Ok(bad as f64)
}

fn uncertainty_worst() -> hydrowallis::Result<f64> {
    let spec = QuadratureSpec::default();
    let mut worst = 0.0f64;
    for dim in 2..=8 {
        for ell in 0..=20 {
            let want = uncertainty_ratio(ell, dim)?;
            for beta in [0.01, 1.0, 150.0] {
                let u = quadrature_uncertainty(&TrialState::new(beta, ell, dim)?, &spec)?;
                worst = worst.max((u - want).abs());
            }
        }
    }
    Ok(worst)
}

/// Runs the checks for `level`, taking Γ values from `gamma`.
pub fn run(level: Level, gamma: &dyn GammaSource) -> VerifyReport {
    let mut r = VerifyReport::default();
    let full = level == Level::Full;
    let pick = |fast: u64, full_v: u64| if full { full_v } else { fast };

    r.push_result("bridge_odd", bridge_odd_mismatches(gamma, pick(60, 1000)), 0.0);
    r.push_result("bridge_even", bridge_even_mismatches(gamma, pick(20, 200), pick(4, 20)), 0.0);
    r.push_result(
        "dimension_shift",
        dimension_shift_mismatches(gamma, pick(30, 200), pick(5, 20)),
        0.0,
    );
    r.push("wallis_duality", duality_mismatches(pick(300, 10_000) as usize), 0.0);
    let quad_cases: Vec<(u64, u32)> = if full {
        (2..=8).flat_map(|d| (0..=20).map(move |l| (l, d))).collect()
    } else {
        vec![(0, 3), (2, 5)]
    };
    let scales: &[f64] = if full { &[0.05, 0.3, 1.0, 3.0, 20.0] } else { &[1.0, 0.3] };
    r.push_result("quadrature_expectation", quadrature_worst(&quad_cases, scales), 1e-10);
    let states: Vec<(u64, u64, u32)> = if full {
        (2..=5)
            .flat_map(|d| (0..=3).flat_map(move |l| (0..=1).map(move |n| (n, l, d))))
            .collect()
    } else {
        vec![(0, 0, 3)]
    };
    r.push_result("eigensolver_spectrum", eigen_worst(&states), 1.0);
    if !full {
        return r;
    }
    r.push("wallis_monotone_exact", monotone_exact_violations(10_000), 0.0);
    r.push("wallis_monotone_float", monotone_float_violations(10_000_000), 0.0);
    // R(ℓ, 3) is a rational multiple of 1/π, so 2ℓ(1 - R) never equals 1.
    r.push_result("ratio_limit", ratio_limit(10_000), 1.0);
    r.push_result("pi_estimate", pi_deficit_gap(100_000), 0.02);
    r.push_result(
        "convergence_order",
        convergence_order(&[1_000, 10_000, 100_000, 1_000_000]).map(|f| (f.slope + 1.0).abs()),
        0.02,
    );
    r.push_result("numeric_minimize", minimize_worst(), 1e-8);
    r.push_result("variational_bound", variational_violations(), 0.0);
    r.push_result("uncertainty_ratio", uncertainty_worst(), 1e-9);
    r.push_result("eigensolver_below_bound", eigen_bound_violation(), 0.0);
    r
}

pub fn write_report(out: &mut impl Write, report: &VerifyReport) -> std::io::Result<()> {
    for c in &report.checks {
        writeln!(
            out,
            "{} {} measured={} tolerance={}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            if c.measured.is_finite() { format_f64(c.measured) } else { "error".into() },
            format_f64(c.tolerance)
        )?;
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    writeln!(out, "verify: {passed}/{} checks passed", report.checks.len())
}

/// Runs, prints, and converts an overall failure into [`Failure::Verification`].
pub fn verify(out: &mut impl Write, level: Level, inject_fault: bool) -> Result<(), Failure> {
    let report = if inject_fault {
        run(level, &PerturbedGamma)
    } else {
        run(level, &ExactGamma)
    };
    write_report(out, &report)?;
    out.flush()?;
    if report.overall() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("failing checks: {}", report.failing().join(", "))))
    }
}

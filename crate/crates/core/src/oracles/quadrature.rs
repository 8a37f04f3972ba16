//! Adaptive Gauss–Kronrod quadrature of the radial integrals of the trial
//! state `R = r^ℓ e^{-βr²}` with weight `r^(N-1)`.
//!
//! Every integrand here is a polynomial in `r` times `e^{-2βr²}` with a
//! nonnegative integer power, so it is smooth on `[0, r_cut]` and no
//! change of variable is needed.

use alloc::collections::BinaryHeap;
use alloc::format;
use core::cmp::Ordering;

use crate::error::{domain, Error, Result};
use crate::variational::{EnergyValue, TrialState};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerances for [`quadrature_expectation`] and [`quadrature_moment`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    rel_tol: f64,
    max_depth: u32,
    r_cut: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-12,
            max_depth: 40,
            r_cut: None,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, max_depth: u32) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1e-6) {
            return Err(domain(format!("relative tolerance must lie in (0, 1e-6), got {rel_tol}")));
        }
        if max_depth == 0 {
            return Err(domain("subdivision depth must be positive"));
        }
        Ok(QuadratureSpec {
            rel_tol,
            max_depth,
            r_cut: None,
        })
    }

    /// Fixes the cutoff instead of deriving it from the tail bound.
    pub fn with_r_cut(mut self, r_cut: f64) -> Result<Self> {
        if !(r_cut > 0.0 && r_cut.is_finite()) {
            return Err(domain("cutoff radius must be positive"));
        }
        self.r_cut = Some(r_cut);
        Ok(self)
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    /// Cutoff beyond which `r^(2ℓ+N+2) e^{-2βr²}` is below `rel_tol` times
    /// its peak value, with three extra decades of margin.
    pub fn r_cut(&self, s: &TrialState) -> f64 {
        if let Some(r) = self.r_cut {
            return r;
        }
        let p = (2 * s.ell() + s.dim() as u64 + 2) as f64;
        // In x = r √(2β) the profile is x^p e^{-x²} with its peak at x² = p/2.
        let log_f = |x: f64| p * libm::log(x) - x * x;
        let x_peak = libm::sqrt(p / 2.0);
        let target = log_f(x_peak) + libm::log(self.rel_tol) - 3.0 * core::f64::consts::LN_10;
        let mut lo = x_peak;
        let mut hi = x_peak + 1.0;
        while log_f(hi) > target {
            lo = hi;
            hi *= 2.0;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if log_f(mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi / libm::sqrt(2.0 * s.beta())
    }
}

/// A radial moment `⟨r^k⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialMoment {
    pub order: u32,
    pub value: f64,
}

fn kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        k += WGK[i] * pair;
        if i % 2 == 1 {
            g += WG[i / 2] * pair;
        }
    }
    (k * h, libm::fabs((k - g) * h))
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integral of `f` over `[a, b]` to relative accuracy `rel_tol`, bisecting the
/// interval with the largest error estimate first. Returns the value and its
/// error bound.
pub fn integrate(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_depth: u32,
) -> Result<(f64, f64)> {
    const START: usize = 8;
    let mut heap = BinaryHeap::new();
    let width = (b - a) / START as f64;
    for i in 0..START {
        let lo = a + width * i as f64;
        let hi = if i + 1 == START { b } else { lo + width };
        let (value, error) = kronrod(&f, lo, hi);
        heap.push(Piece { a: lo, b: hi, value, error, depth: 0 });
    }
    loop {
        let total: f64 = heap.iter().map(|p| p.value).sum();
        let err: f64 = heap.iter().map(|p| p.error).sum();
        if err <= rel_tol * libm::fabs(total) || err == 0.0 {
            return Ok((total, err));
        }
        let worst = heap.pop().expect("heap is never empty");
        if worst.depth >= max_depth {
            return Err(Error::Convergence {
                estimate: total,
                error_bound: err,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = kronrod(&f, lo, hi);
            heap.push(Piece { a: lo, b: hi, value, error, depth: worst.depth + 1 });
        }
    }
}

/// `r^n e^{-2βr²}` with `r^0 = 1`.
fn gauss_power(beta: f64, n: u64) -> impl Fn(f64) -> f64 {
    move |r: f64| libm::pow(r, n as f64) * libm::exp(-2.0 * beta * r * r)
}

struct Integrals {
    norm: f64,
    kinetic: f64,
    potential: f64,
}

fn energy_integrals(s: &TrialState, spec: &QuadratureSpec, by_parts: bool) -> Result<Integrals> {
    let (beta, ell, n) = (s.beta(), s.ell(), s.dim() as u64);
    let cut = spec.r_cut(s);
    let run = |f: &dyn Fn(f64) -> f64| integrate(f, 0.0, cut, spec.rel_tol, spec.max_depth);
    let p = 2 * ell + n - 1;
    let (norm, _) = run(&gauss_power(beta, p))?;
    let (potential, _) = run(&gauss_power(beta, p - 1))?;
    let (kinetic, _) = if by_parts {
        // (R')² r^(N-1) + ℓ(ℓ+N-2) R² r^(N-3)
        let c = (ell * (ell + n - 2)) as f64;
        let l = ell as f64;
        if ell == 0 {
            let g = gauss_power(beta, n + 1);
            run(&|r| 4.0 * beta * beta * g(r))?
        } else {
            let g = gauss_power(beta, p - 2);
            run(&|r| {
                let t = l - 2.0 * beta * r * r;
                (t * t + c) * g(r)
            })?
        }
    } else {
        // -R'' - (N-1)/r R' + ℓ(ℓ+N-2)/r² R = (2β(2ℓ+N) - 4β²r²) R
        let g = gauss_power(beta, p);
        let a = 2.0 * beta * (2 * ell + n) as f64;
        run(&|r| (a - 4.0 * beta * beta * r * r) * g(r))?
    };
    Ok(Integrals {
        norm,
        kinetic,
        potential,
    })
}

/// `⟨R|H|R⟩ / ⟨R|R⟩` by quadrature, the kinetic term integrated by parts.
pub fn quadrature_expectation(s: &TrialState, spec: &QuadratureSpec) -> Result<EnergyValue> {
    let i = energy_integrals(s, spec, true)?;
    Ok(EnergyValue::Float((i.kinetic - 2.0 * i.potential) / i.norm))
}

/// As [`quadrature_expectation`] with the Laplacian applied to `R` directly.
pub fn quadrature_expectation_direct(s: &TrialState, spec: &QuadratureSpec) -> Result<EnergyValue> {
    let i = energy_integrals(s, spec, false)?;
    Ok(EnergyValue::Float((i.kinetic - 2.0 * i.potential) / i.norm))
}

/// `⟨r^k⟩` for `k ∈ {2, 4}`.
pub fn quadrature_moment(s: &TrialState, k: u32, spec: &QuadratureSpec) -> Result<RadialMoment> {
    if k != 2 && k != 4 {
        return Err(domain(format!("moment order must be 2 or 4, got {k}")));
    }
    let cut = spec.r_cut(s);
    let p = 2 * s.ell() + s.dim() as u64 - 1;
    let (norm, _) = integrate(gauss_power(s.beta(), p), 0.0, cut, spec.rel_tol, spec.max_depth)?;
    let (m, _) = integrate(
        gauss_power(s.beta(), p + k as u64),
        0.0,
        cut,
        spec.rel_tol,
        spec.max_depth,
    )?;
    Ok(RadialMoment { order: k, value: m / norm })
}

/// `√(⟨r⁴⟩ - ⟨r²⟩²) / ⟨r²⟩` from quadrature moments.
pub fn quadrature_uncertainty(s: &TrialState, spec: &QuadratureSpec) -> Result<f64> {
    let m2 = quadrature_moment(s, 2, spec)?.value;
    let m4 = quadrature_moment(s, 4, spec)?.value;
    Ok(libm::sqrt(m4 - m2 * m2) / m2)
}

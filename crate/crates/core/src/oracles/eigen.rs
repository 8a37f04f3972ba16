//! Finite-difference eigenvalues of the N-dimensional radial Coulomb problem
//! `-(R'' + (N-1)/r R' - ℓ(ℓ+N-2)/r² R) - 2R/r = E R`.
//!
//! Two discretisations on the uniform grid `r_i = i h`, `h = r_max / M`:
//!
//! * [`Discretization::FluxForm`] (default) writes `R = r^ℓ w`, which turns the
//!   problem into `-(r^p w')' - 2 r^(p-1) w = E r^p w` with `p = 2ℓ + N - 1`,
//!   and integrates it over the cells around each node. This stays second
//!   order in `h` for every `ℓ` and `N`, including `N = 2`.
//! * [`Discretization::ReducedStencil`] uses `u = r^((N-1)/2) R`, for which
//!   `-u'' + (Λ(Λ+1)/r² - 2/r) u = E u` with `Λ = ℓ + (N-3)/2`, and the plain
//!   three-point stencil with `u(0) = 0`. Its accuracy drops sharply when
//!   `Λ(Λ+1) < 0`.
//!
//! Eigenvalues come from Sturm-sequence bisection on the symmetric
//! tridiagonal matrix. Each solve runs on `M` and `2M` points and reports
//! the Richardson extrapolation together with its error estimate.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::variational::{EnergyValue, QuantumNumbers};

/// How the radial operator is turned into a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Discretization {
    #[default]
    FluxForm,
    ReducedStencil,
}

/// Grid and tolerance settings for [`radial_eigensolve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigensolverSpec {
    grid_points: usize,
    r_max: Option<f64>,
    tolerance: f64,
    discretization: Discretization,
}

impl Default for EigensolverSpec {
    fn default() -> Self {
        EigensolverSpec {
            grid_points: 32_000,
            r_max: None,
            tolerance: 1e-6,
            discretization: Discretization::FluxForm,
        }
    }
}

impl EigensolverSpec {
    pub const MIN_GRID_POINTS: usize = 1000;

    pub fn new(grid_points: usize, tolerance: f64) -> Result<Self> {
        if grid_points < Self::MIN_GRID_POINTS {
            return Err(domain(format!(
                "grid needs at least {} points, got {grid_points}",
                Self::MIN_GRID_POINTS
            )));
        }
        if !(tolerance > 0.0) {
            return Err(domain("eigenvalue tolerance must be positive"));
        }
        Ok(EigensolverSpec {
            grid_points,
            tolerance,
            ..Self::default()
        })
    }

    pub fn with_r_max(mut self, r_max: f64) -> Result<Self> {
        if !(r_max > 0.0 && r_max.is_finite()) {
            return Err(domain("r_max must be positive"));
        }
        self.r_max = Some(r_max);
        Ok(self)
    }

    pub fn with_discretization(mut self, d: Discretization) -> Self {
        self.discretization = d;
        self
    }

    pub fn grid_points(&self) -> usize {
        self.grid_points
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn discretization(&self) -> Discretization {
        self.discretization
    }

    /// `40 (n_r + ℓ + (N-1)/2)²` unless set explicitly.
    pub fn r_max(&self, q: &QuantumNumbers) -> f64 {
        self.r_max.unwrap_or_else(|| {
            let n = q.effective_n();
            40.0 * n * n
        })
    }
}

/// A Richardson-extrapolated eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    /// `(4 E_2M - E_M) / 3`.
    pub value: f64,
    /// `|value - E_2M|`.
    pub error_estimate: f64,
    pub coarse: f64,
    pub fine: f64,
}

impl Eigenvalue {
    pub fn energy(&self) -> EnergyValue {
        EnergyValue::Float(self.value)
    }
}

/// Symmetric tridiagonal matrix: `diag[i]`, and `off[i]` couples `i` and `i+1`.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.diag.len() {
            let coupling = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] / q };
            q = self.diag[i] - x - coupling;
            if q == 0.0 {
                q = -f64::EPSILON * (libm::fabs(self.diag[i]) + libm::fabs(x)).max(f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the spectrum.
    pub fn bounds(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { libm::fabs(self.off[i - 1]) } else { 0.0 };
            let right = if i + 1 < n { libm::fabs(self.off[i]) } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (from 0), by bisection.
    pub fn eigenvalue(&self, k: usize) -> Option<f64> {
        if k >= self.diag.len() {
            return None;
        }
        let (mut lo, mut hi) = self.bounds();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(0.5 * (lo + hi))
    }
}

/// `Λ = ℓ + (N-3)/2` of the reduced equation.
pub fn reduced_lambda(ell: u64, dim: u32) -> f64 {
    ell as f64 + (dim as f64 - 3.0) / 2.0
}

/// Flux-form matrix in units where the grid spans `[0, 1]`; the physical
/// matrix is `kinetic / r_max² - potential / r_max`, combined here.
fn flux_form(q: &QuantumNumbers, m: usize, r_max: f64) -> Tridiagonal {
    let p = (2 * q.ell() + q.dim() as u64 - 1) as f64;
    let h = 1.0 / m as f64;
    let node = |i: usize| i as f64 * h;
    let lo = |i: usize| (node(i) - 0.5 * h).max(0.0);
    let hi = |i: usize| node(i) + 0.5 * h;
    let mass = |i: usize| (libm::pow(hi(i), p + 1.0) - libm::pow(lo(i), p + 1.0)) / (p + 1.0);
    let pot = |i: usize| 2.0 * (libm::pow(hi(i), p) - libm::pow(lo(i), p)) / p;
    let flux = |i: usize| libm::pow((i as f64 + 0.5) * h, p) / h;

    // Leading cells whose weight underflows carry nothing; drop them.
    let first = (0..m).find(|&i| mass(i) > 1e-250).unwrap_or(m - 1);
    let masses: Vec<f64> = (first..m).map(mass).collect();
    let k2 = 1.0 / (r_max * r_max);
    let k1 = 1.0 / r_max;
    let diag = (first..m)
        .zip(&masses)
        .map(|(i, &w)| {
            let left = if i == 0 { 0.0 } else { flux(i - 1) };
            ((flux(i) + left) * k2 - pot(i) * k1) / w
        })
        .collect();
    let off = (first..m - 1)
        .zip(masses.windows(2))
        .map(|(i, w)| -flux(i) * k2 / libm::sqrt(w[0] * w[1]))
        .collect();
    Tridiagonal { diag, off }
}

/// Three-point stencil for `u`, nodes `r_1 .. r_{M-1}`.
fn reduced_stencil(q: &QuantumNumbers, m: usize, r_max: f64) -> Tridiagonal {
    let lam = reduced_lambda(q.ell(), q.dim());
    let c = lam * (lam + 1.0);
    let h = r_max / m as f64;
    let diag = (1..m)
        .map(|i| {
            let r = i as f64 * h;
            2.0 / (h * h) + c / (r * r) - 2.0 / r
        })
        .collect();
    let off = alloc::vec![-1.0 / (h * h); m - 2];
    Tridiagonal { diag, off }
}

/// The discretised operator on `m` grid intervals.
pub fn radial_matrix(q: &QuantumNumbers, spec: &EigensolverSpec, m: usize) -> Tridiagonal {
    let r_max = spec.r_max(q);
    match spec.discretization {
        Discretization::FluxForm => flux_form(q, m, r_max),
        Discretization::ReducedStencil => reduced_stencil(q, m, r_max),
    }
}

/// The `(n_r + 1)`-th lowest eigenvalue on `m` grid intervals, no extrapolation.
pub fn eigenvalue_on_grid(q: &QuantumNumbers, spec: &EigensolverSpec, m: usize) -> Result<f64> {
    radial_matrix(q, spec, m)
        .eigenvalue(q.n_r() as usize)
        .ok_or_else(|| Error::Internal("grid has fewer nodes than requested states".into()))
}

/// Eigenvalue for `q` on grids `M` and `2M` with Richardson extrapolation.
/// Fails with a resolution error when the estimate exceeds the tolerance.
pub fn radial_eigensolve(q: &QuantumNumbers, spec: &EigensolverSpec) -> Result<Eigenvalue> {
    let m = spec.grid_points;
    let coarse = eigenvalue_on_grid(q, spec, m)?;
    let fine = eigenvalue_on_grid(q, spec, 2 * m)?;
    let value = (4.0 * fine - coarse) / 3.0;
    let error_estimate = libm::fabs(value - fine);
    if error_estimate > spec.tolerance {
        return Err(Error::Resolution {
            estimate: error_estimate,
            tolerance: spec.tolerance,
            grid_points: m,
        });
    }
    Ok(Eigenvalue {
        value,
        error_estimate,
        coarse,
        fine,
    })
}

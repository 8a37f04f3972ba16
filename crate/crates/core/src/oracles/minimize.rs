//! Numerical minimisation of the trial-state energy over `β`.

use alloc::format;

use crate::error::{domain, Error, Result};
use crate::variational::{check_dim, expectation_energy, gamma_ratio_g_f64, EnergyValue, TrialState};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Smallest tolerance accepted by [`numeric_minimize`].
pub const MIN_TOLERANCE: f64 = 1e-14;

/// Golden-section search for the minimum of `f` on `[a, b]`, stopping once
/// the bracket is narrower than `width`. Returns the final bracket.
pub fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, width: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > width {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    (a, b)
}

/// Vertex of the parabola through `(x - h, x, x + h)`.
fn parabolic_vertex(f: &impl Fn(f64) -> f64, x: f64, h: f64) -> Option<f64> {
    let (fl, fm, fr) = (f(x - h), f(x), f(x + h));
    let curvature = fl - 2.0 * fm + fr;
    if !(curvature > 0.0) {
        return None;
    }
    Some(x + 0.5 * h * (fl - fr) / curvature)
}

/// Minimises `⟨H⟩` over `β`, searching in `x = √(2β)` where the energy is a
/// parabola. Golden section narrows the bracket `[0, 4G/(ℓ+N/2)]`, then
/// parabolic steps locate the vertex to `tol`. Returns `(β̂, Ê)`.
pub fn numeric_minimize(ell: u64, dim: u32, tol: f64) -> Result<(f64, EnergyValue)> {
    check_dim(dim)?;
    if !(tol >= MIN_TOLERANCE) {
        return Err(domain(format!("tolerance must be at least {MIN_TOLERANCE:e}, got {tol:e}")));
    }
    let g = gamma_ratio_g_f64(ell, dim);
    let shell = ell as f64 + dim as f64 / 2.0;
    let energy = |x: f64| {
        TrialState::new(0.5 * x * x, ell, dim)
            .map(|s| expectation_energy(&s).to_f64())
            .unwrap_or(0.0)
    };
    let hi = 4.0 * g / shell;
    let (a, b) = golden_section(energy, 0.0, hi, 0.1 * hi);
    if a <= 0.0 && b >= hi {
        return Err(Error::Internal("golden-section bracket did not shrink".into()));
    }

    let mut x = 0.5 * (a + b);
    let mut h = 0.5 * (b - a);
    for _ in 0..8 {
        let next = parabolic_vertex(&energy, x, h)
            .filter(|v| *v > 0.0 && *v < hi)
            .ok_or_else(|| Error::Internal("energy is not convex near the bracket".into()))?;
        let step = libm::fabs(next - x);
        x = next;
        if step <= 0.25 * tol * x {
            break;
        }
        h = (2.0 * step).clamp(1e-4 * x, h);
    }
    Ok((0.5 * x * x, EnergyValue::Float(energy(x))))
}

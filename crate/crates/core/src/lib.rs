//! Variational treatment of the N-dimensional hydrogen atom with Gaussian
//! trial states, and the exact identities that turn its accuracy ratio into
//! partial Wallis products for π.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is expressed in
//! dimensionless units: energies in `m e⁴ / 2ħ²`, lengths in `ħ² / m e²`, and
//! the Gaussian exponent as `β = α (ħ² / m e²)²`. In these units the radial
//! Hamiltonian reads `-(d²/dr² + (N-1)/r d/dr - ℓ(ℓ+N-2)/r²) - 2/r`.
//!
//! * [`exactnum`]: big rationals tagged with a power of `√π`, exact Γ on the
//!   half-integer lattice, and certified high-precision evaluation.
//! * [`variational`]: trial-state energy, its analytic minimum, the exact
//!   spectrum and the accuracy ratio between the two.
//! * [`wallis`]: partial Wallis products, the bridge identities to the
//!   accuracy ratio, π estimates and the convergence-rate fit.
//! * [`oracles`]: quadrature, golden-section minimisation and a
//!   finite-difference radial eigensolver used to check the closed forms.
#![no_std]

extern crate alloc;

pub mod error;
pub mod exactnum;
pub mod oracles;
pub mod variational;
pub mod wallis;

pub use error::{Error, Result};
pub use exactnum::{
    double_factorial, gamma_exact, gamma_ratio_exact, BigRational, Enclosure, ExactGamma,
    GammaSource, HalfInteger, HpFloat, PiTaggedRational, Rounding,
};
pub use variational::{
    accuracy_ratio, analytic_minimum, dimension_shift_identity, exact_energy,
    expectation_energy, uncertainty_ratio, EnergyValue, QuantumNumbers, TrialState,
};
pub use wallis::{
    accuracy_deficit, bridge_even, bridge_odd, convergence_order, pi_estimate,
    pi_estimate_enclosure, wallis_partial, wallis_reciprocal_partial, Backing,
    ConvergenceFit, ConvergenceRecord, PartialProduct, PartialValue, ScanSweep,
};

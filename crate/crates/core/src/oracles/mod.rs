//! Numerical cross-checks of the closed forms: quadrature of the
//! expectation integrals, direct minimisation over `β`, and a radial
//! eigensolver for the exact spectrum.

pub mod eigen;
pub mod minimize;
pub mod quadrature;

pub use eigen::{radial_eigensolve, Discretization, Eigenvalue, EigensolverSpec};
pub use minimize::numeric_minimize;
pub use quadrature::{
    quadrature_expectation, quadrature_moment, quadrature_uncertainty, QuadratureSpec,
    RadialMoment,
};

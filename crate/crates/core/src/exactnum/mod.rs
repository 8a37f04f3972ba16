//! Exact arithmetic: big rationals, rationals times powers of `√π`, Γ on the
//! half-integer lattice, and certified high-precision evaluation.

mod gamma;
mod half;
pub mod hpfloat;
mod pitagged;

pub use gamma::{
    double_factorial, factorial, gamma_exact, gamma_ratio_exact, ExactGamma, GammaSource,
    MAX_TWICE_ARGUMENT,
};
pub(crate) use gamma::{legendre, primes_up_to, rational_from_valuations};
pub use half::HalfInteger;
pub use hpfloat::{Enclosure, HpFloat, Rounding};
pub use pitagged::PiTaggedRational;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

/// `q · num / den` for small positive `num`, `den`, cancelling common
/// factors with word-sized gcds only.
pub fn scale_rational(q: &BigRational, num: u64, den: u64) -> BigRational {
    assert!(num > 0 && den > 0, "scale factor must be positive");
    let rem_d = (q.denom() % num).to_u64().expect("remainder below num");
    let rem_n = (q.numer().abs() % den).to_u64().expect("remainder below den");
    let g1 = num.gcd(&rem_d);
    let g2 = den.gcd(&rem_n);
    let (num, den) = (num / g1, den / g2);
    let numer = q.numer() / g2 * num;
    let denom = q.denom() / g1 * den;
    debug_assert_eq!(num.gcd(&den), 1, "factor must be given in lowest terms");
    BigRational::new_raw(numer, denom)
}

//! The rational function field F = F_q(t): polynomial arithmetic,
//! factorization, places and valuations, and rational root finding.

pub mod factor;
pub mod place;
pub mod poly;
pub mod ratfn;
pub mod roots;

pub use factor::{factor, is_irreducible, monic_divisors, monic_irreducibles, FPoly};
pub use place::{LocalLeading, Place, PlaceKind};
pub use poly::Polynomial;
pub use ratfn::{RatFn, RatFnField};
pub use roots::{primitive_integral_coeffs, rational_roots, XPoly};

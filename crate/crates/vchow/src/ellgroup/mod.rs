//! Elliptic curve group machinery over any supported coefficient field:
//! the group law, division polynomials, naive point counting, torsion
//! ranks over finite fields, and quotient isogenies.

pub mod count;
pub mod divpoly;
pub mod point;
pub mod velu;

pub use count::{count_points, enumerate_points, l_torsion_rank};
pub use divpoly::{division_poly, doubling_x_map, two_torsion_cubic, DivisionPoly};
pub use point::Point;
pub use velu::{isogeny_from_kernel, velu_codomain, verify_kernel, IsogenyData};

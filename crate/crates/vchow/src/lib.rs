//! Local and global mod-l invariants of elliptic curves over F_q(t).
//!
//! The crate computes, for an elliptic curve E over a rational function
//! field and a prime l different from the characteristic: reduction types
//! at all places, the local dimensions dim V(E_v)/l, the Galois-coinvariant
//! dimension of the l-torsion, and the kernel/cokernel bookkeeping of the
//! global boundary map assembled from those pieces.

pub mod cli;
pub mod config;
pub mod curve;
pub mod ellgroup;
pub mod error;
pub mod funcfield;
pub mod gf;
pub mod localdim;
pub mod modl;
pub mod report;
pub mod ring;

pub use error::{Error, Result};

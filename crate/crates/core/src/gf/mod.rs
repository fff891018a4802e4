//! Finite field construction, trace and basis machinery.

mod basis;
mod field;
mod poly;
pub(crate) mod prime_poly;

pub use basis::{dot, SubfieldBasis};
pub use field::{Field, Gf, MAX_ORDER};
pub use poly::{subspace_polynomial, Poly};

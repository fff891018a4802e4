//! Trace repair of Reed-Solomon codes over GF(q^ℓ): schemes, bandwidth and
//! disk-read accounting, and exhaustive verification at small parameters.

pub mod code;
pub mod construct;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod repair;
pub mod search;
pub mod serial;
pub mod sim;
pub mod subspace;

pub use error::{Error, Result};

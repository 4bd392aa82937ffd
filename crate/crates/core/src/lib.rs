//! Exact computation with q-varieties: F_q-linear (Ore) polynomials over a
//! field of characteristic p, modules over the Ore ring K{τ}, the varieties
//! they cut out, and A = F_q[T]-module structures on those varieties.

pub mod amod;
pub mod coeffs;
pub mod error;
pub mod linalg;
pub mod ore;
pub mod orelat;
pub mod qvar;

pub use error::{Error, Result};

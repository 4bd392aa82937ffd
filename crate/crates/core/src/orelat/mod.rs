//! Matrices over K{τ} and submodules of Λ_n = K{τ}^n.

mod diag;
mod hermite;
mod matrix;
mod module;

pub use diag::{diagonalize, DiagForm};
pub use hermite::{hermite, reduce, Hermite};
pub use matrix::{row_is_zero, row_times, OreMatrix};
pub use module::{left_kernel, unify, RadicalData, TauSubmodule};

//! q-varieties: zero sets of submodules of Λ_n, their canonical form and
//! geometry, and morphisms between them.

mod morphism;
mod variety;

pub use morphism::{quotient, Differential, Morphism};
pub use variety::{variety_from_points, zeros, FinitePart, QVariety, TangentSpace};

#[cfg(test)]
mod tests;

//! A = F_q[T]-module structures on q-varieties.

mod rank;
mod snf;
mod structure;
mod submodules;

pub use rank::{default_primes, PrimeEstimate, RankReport};
pub use snf::invariant_factors;
pub use structure::{AModule, Characteristic, TateReport, TorsionPoints, TorsionReport};
pub use submodules::{AdditivityReport, ExactnessEntry, ExactnessReport};

#[cfg(test)]
mod tests;

use thiserror::Error;

/// Errors raised by the algebra layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different coefficient fields")]
    MixedBackends,
    #[error("operation not available on this backend: {0}")]
    Capability(String),
    #[error("no splitting extension found up to degree {0}")]
    NoSplittingFound(usize),
    #[error("matrix does not map the domain into the codomain")]
    NotAMorphismInto,
    #[error("variety is not contained in the ambient variety")]
    NotASubvariety,
    #[error("variety is not stable under the A-action")]
    NotASubmodule,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not enough primes to decide the rank: {0}")]
    InsufficientPrimes(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

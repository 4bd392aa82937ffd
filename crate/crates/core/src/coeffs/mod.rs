//! Coefficient fields: F_q, its finite extensions, F_q(T) and the perfect
//! closure of F_q(T).

mod apoly;
mod embed;
mod ext;
mod field;
mod fq;
mod ratfn;
pub(crate) mod upoly;

pub use apoly::APoly;
pub use embed::{roots_in, Embedding};
pub use field::{Elem, Field, FieldDescriptor, FieldElement, FieldKind};
pub use fq::{prime_power, Fq};
pub use ratfn::RatFn;

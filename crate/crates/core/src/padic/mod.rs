//! Fixed-precision arithmetic in finite extensions of Q_p.

mod analytic;
mod field;
pub(crate) mod fp;
mod galois;
mod scalar;
pub mod text;
mod trace;
mod valuation;

pub use analytic::{pexp, plog};
pub use field::{Field, FieldDescriptor, FieldKind};
pub use galois::GaloisElement;
pub use scalar::PadicScalar;
pub use trace::normalized_trace;
pub use valuation::{Val, Valuation};

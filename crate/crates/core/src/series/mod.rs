//! Truncated multi-index power series with radius-indexed Gauss norms.

mod multi_index;
mod norm;
#[allow(clippy::module_inception)]
mod series;
pub mod text;

pub use multi_index::{binomial, factorial, MultiIndex};
pub use norm::GaussNorm;
pub use series::RadiusIndexedSeries;

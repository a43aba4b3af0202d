pub mod cli;
pub mod error;
pub mod linalg;
pub mod lubin_tate;
pub mod orbit;
pub mod padic;
pub mod sampling;
pub mod sen;
pub mod series;
pub mod sl2;

pub use error::{Error, Result};

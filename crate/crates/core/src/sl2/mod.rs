//! Finite-dimensional representations of sl_2 and SL_2(Z_p).
//!
//! Conventions: D1 = (0 0; 1 0), D2 = (0 1; 0 0), H = (-1 0; 0 1), so that
//! [D1, D2] = H, acting on column vectors. On Sym^k V with basis
//! e1^(k-i) e2^i the weights of H are 2i - k; D1 raises them by 2.
//!
//! The coordinate ring F[x1, x2, y] / (y^2 - x1 x2 - delta^2) models the
//! span of x1 = e1^2, x2 = e2^2 and y = e1 e2 together with the determinant
//! class delta, with D1, D2 acting as derivations.

mod algebra;
mod file;
mod quad;
mod spectrum;
mod symk;

pub use algebra::{j_operator_check, CoordinateAlgebra, CoordinateAlgebraElement, Derivation, Poly2};
pub use file::RepSpec;
pub use quad::{quad_invariant_check, sqrt_series, sqrt_series_rationals, transform_quadratic, QuadraticForm};
pub use spectrum::{characteristic_polynomial, isotypic_decompose, scaled_spectrum, weight_spectrum};
pub use symk::{kronecker, symk_matrices, SL2Element, Sl2Triple, SymkRep};

//! Orbit expansions of analytic actions, the invariantization map C(w),
//! the reconstruction series and the twisted action on the truncated
//! ring of polynomials in u.

mod bsen;
mod chart;
mod cmap;
mod expansion;
mod identities;
mod reconstruct;

pub use bsen::{fixed_space_dimension, fixed_space_dimension_in, sen_ring_act, SenRingElement};
pub use chart::{generator_character, is_generator, principal_log, ActionKind, AnalyticMatrixAction, ChartFunction, ChartTerm};
pub use cmap::{check_cmap_invariance, cmap, combined_action, standard_models, working_degree, InvarianceReport, OrbitModel, VectorSeries};
pub use expansion::{nabla_operator, OrbitExpansion, Vector};
pub use identities::{alternating_identity, derivative_shift_rule, telescope_identity};
pub use reconstruct::{reconstruct, Reconstruction};

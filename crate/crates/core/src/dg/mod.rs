//! Discontinuous Q1 machinery shared by assembly and error measurement.

pub mod basis;
pub mod field;
pub mod norms;
pub mod quadrature;

pub use basis::{eval_basis, BasisValues};
pub use field::{jump, l2_error, l2_project, weighted_average, weights, DgField, Unknown};
pub use norms::{coercivity_norm, gradient_norm, jump_seminorm, star_norm};
pub use quadrature::QuadratureRule;

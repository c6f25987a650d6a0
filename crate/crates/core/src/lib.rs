//! Interior-penalty discontinuous Galerkin solver for incompressible
//! three-phase (liquid / vapor / aqueous) flow in two-dimensional porous media.
//!
//! The unknowns are the liquid pressure and the aqueous and vapor saturations,
//! discretized with discontinuous Q1 elements on structured quadrilateral
//! meshes. Each time step is linear-implicit and sequential: pressure solve,
//! Raviart–Thomas (RT0) velocity reconstruction, aqueous solve, vapor solve,
//! all with coefficients lagged at the previous time level.
//!
//! Module map:
//!
//! - [`mesh`]: uniform quadrilateral meshes with oriented faces.
//! - [`dg`]: Q1 basis, quadrature, fields, trace operators, projection, norms.
//! - [`physics`]: closures, fluids, manufactured solutions and sources.
//! - [`assembly`]: the three linear systems, Dirichlet constraints and the RT0 projection.
//! - [`solver`]: sparse solves and the time loop.
//! - [`harness`]: convergence studies, reports and the CLI configuration.

pub mod assembly;
pub mod dg;
pub mod error;
pub mod harness;
pub mod mesh;
pub mod par;
pub mod physics;
pub mod solver;

pub use error::{Error, Result};

//! The aqueous and vapor saturation systems.
//!
//! For `j` in {aqueous, vapor}, with `lambda = lambda_j` and `rho = rho_j`:
//!
//! ```text
//! (phi/tau)(S, w) + b_j(S, w) = (phi/tau)(S^n, w) + (q_j, w)
//!     + sum_K int_K (lambda u + kappa rho lambda g) . grad w
//!     - sum_e int_e (lambda)^up u . n_e [w]
//!     - sum_e int_e {rho kappa lambda g . n_e} [w]
//!     + Neumann terms
//! ```

use super::coefficients::Coefficients;
use super::dirichlet::{apply_dirichlet, dirichlet_constraints};
use super::form::{diffusion_form, mass_matrix, sides, Load};
use super::pressure::{add_neumann, average_weights};
use super::rt0::RtField;
use super::{InteriorPenalty, LinearSystem};
use crate::dg::{DgField, Unknown};
use crate::error::{Error, Result};
use crate::mesh::Mesh;
use crate::par::Execution;
use crate::physics::Case;

/// Upwind choice: `true` selects the trace of `K1`. The selector is the plain
/// average `{D u + D^g g}_{1/2} . n_e`, ties going to `K1`.
#[inline]
pub fn upwind_first(d: [f64; 2], un: f64, dg: [f64; 2], gn: f64) -> bool {
    0.5 * (d[0] + d[1]) * un + 0.5 * (dg[0] + dg[1]) * gn >= 0.0
}

/// The upwinded value `D|_{K1}` or `D|_{K2}`.
#[inline]
pub fn upwind_value(d: [f64; 2], un: f64, dg: [f64; 2], gn: f64) -> f64 {
    if upwind_first(d, un, dg, gn) {
        d[0]
    } else {
        d[1]
    }
}

/// Data a saturation step needs beyond the coefficients.
#[derive(Debug, Clone, Copy)]
pub struct SaturationInputs<'a> {
    pub unknown: Unknown,
    /// Saturation at the previous time level.
    pub previous: &'a DgField,
    pub velocity: &'a RtField,
    pub tau: f64,
    /// Time level the sources and boundary data are evaluated at.
    pub time: f64,
}

fn phase_density(case: &dyn Case, unknown: Unknown) -> f64 {
    let rho = &case.fluids().density;
    match unknown {
        Unknown::Aqueous => rho.aqueous,
        Unknown::Vapor => rho.vapor,
        Unknown::Pressure => panic!("pressure is not a saturation"),
    }
}

fn phase_source(case: &dyn Case, unknown: Unknown, t: f64, x: [f64; 2]) -> f64 {
    let q = case.sources(t, x[0], x[1]);
    match unknown {
        Unknown::Aqueous => q.aqueous,
        Unknown::Vapor => q.vapor,
        Unknown::Pressure => q.total(),
    }
}

/// Per-face upwind choices (`None` on boundary faces).
pub fn upwind_choices(
    mesh: &Mesh,
    coeffs: &dyn Coefficients,
    unknown: Unknown,
    velocity: &RtField,
    rho: f64,
    gravity: [f64; 2],
    exec: Execution,
) -> Vec<Option<bool>> {
    exec.map(mesh.faces.len(), |f| {
        let face = &mesh.faces[f];
        if !face.is_interior() {
            return None;
        }
        let (m1, k2, m2) = sides(face, 0.5);
        let c1 = coeffs.at(face.k1, m1[0], m1[1]);
        let c2 = coeffs.at(k2, m2[0], m2[1]);
        let d = [c1.advected_mobility(unknown), c2.advected_mobility(unknown)];
        let dg = [rho * c1.kappa * d[0], rho * c2.kappa * d[1]];
        let gn = gravity[0] * face.normal[0] + gravity[1] * face.normal[1];
        Some(upwind_first(d, velocity.normal_velocity(f), dg, gn))
    })
}

/// Saturation system for `inputs.unknown`.
pub fn assemble_saturation(
    mesh: &Mesh,
    coeffs: &dyn Coefficients,
    case: &dyn Case,
    inputs: SaturationInputs<'_>,
    ip: InteriorPenalty,
    exec: Execution,
) -> Result<LinearSystem> {
    let unknown = inputs.unknown;
    if !(inputs.tau > 0.0) {
        return Err(Error::Config(format!("time step must be positive, got {}", inputs.tau)));
    }
    let fluids = case.fluids();
    let phi_tau = fluids.porosity / inputs.tau;
    let rho = phase_density(case, unknown);
    let g = fluids.gravity;
    let t = inputs.time;

    let form = diffusion_form(mesh, coeffs, unknown, ip, exec)?;
    let degenerate_faces = form.degenerate_faces();
    let mut matrix = form.matrix.add_scaled(1.0, &mass_matrix(mesh, phi_tau));

    let mut load = Load::new(mesh, exec);
    let prev = inputs.previous;
    let u = inputs.velocity;
    load.cell_terms(|k, r, x| {
        let c = coeffs.at(k, r[0], r[1]);
        let lam = c.advected_mobility(unknown);
        let vel = u.velocity(k, r[0], r[1]);
        let s = phi_tau * prev.value(k, r[0], r[1]) + phase_source(case, unknown, t, x);
        let gl = c.kappa * rho * lam;
        (s, [lam * vel[0] + gl * g[0], lam * vel[1] + gl * g[1]])
    });

    let choices = upwind_choices(mesh, coeffs, unknown, u, rho, g, exec);
    load.interior_face_terms(|face, s| {
        let (m1, k2, m2) = sides(face, 0.5);
        let mid1 = coeffs.at(face.k1, m1[0], m1[1]);
        let mid2 = coeffs.at(k2, m2[0], m2[1]);
        let (r1, _, r2) = sides(face, s);
        let c1 = coeffs.at(face.k1, r1[0], r1[1]);
        let c2 = coeffs.at(k2, r2[0], r2[1]);
        let gn = g[0] * face.normal[0] + g[1] * face.normal[1];
        let lam = if choices[face.id].expect("interior face") {
            c1.advected_mobility(unknown)
        } else {
            c2.advected_mobility(unknown)
        };
        let gl = |c: &super::PointCoefficients| rho * c.kappa * c.advected_mobility(unknown);
        let (w1, w2) = average_weights(gl(&mid1), gl(&mid2))?;
        let grav = (w1 * gl(&c1) + w2 * gl(&c2)) * gn;
        Ok(-lam * u.normal_velocity(face.id) - grav)
    })?;
    add_neumann(&mut load, case, unknown, t);
    let mut rhs = load.values;

    let constraints = dirichlet_constraints(mesh, case.boundary(), unknown, |x, y| case.exact(unknown, t, x, y))?;
    apply_dirichlet(&mut matrix, &mut rhs, &constraints);
    Ok(LinearSystem {
        matrix,
        rhs,
        constraints,
        degenerate_faces,
    })
}

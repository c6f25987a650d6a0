//! The liquid-pressure system.

use super::coefficients::{Coefficients, PointCoefficients};
use super::dirichlet::{apply_dirichlet, dirichlet_constraints};
use super::form::{diffusion_form, sides, Load};
use super::{InteriorPenalty, LinearSystem};
use crate::dg::{weights, Unknown};
use crate::error::Result;
use crate::mesh::Mesh;
use crate::par::Execution;
use crate::physics::Case;

/// Weights of a coefficient-weighted average, plain when both traces vanish.
pub(crate) fn average_weights(a1: f64, a2: f64) -> Result<(f64, f64)> {
    if a1 + a2 == 0.0 {
        Ok((0.5, 0.5))
    } else {
        weights(a1, a2)
    }
}

/// The three pressure-load fluxes: vapor capillary, aqueous capillary and
/// gravity, each paired with the coefficient that weights its face average.
fn load_fluxes(c: &PointCoefficients, g: [f64; 2]) -> [([f64; 2], f64); 3] {
    let k = c.kappa;
    let lv = k * c.mobility.vapor;
    let la = k * c.mobility.aqueous;
    let lg = k * c.rho_total;
    [
        ([lv * c.grad_pcv[0], lv * c.grad_pcv[1]], lv),
        ([la * c.grad_pca[0], la * c.grad_pca[1]], la),
        ([lg * g[0], lg * g[1]], lg),
    ]
}

/// Unconstrained right-hand side `f_p` at time `t`.
pub fn pressure_load(mesh: &Mesh, coeffs: &dyn Coefficients, case: &dyn Case, t: f64, exec: Execution) -> Result<Vec<f64>> {
    let g = case.fluids().gravity;
    let mut load = Load::new(mesh, exec);
    load.cell_terms(|k, r, x| {
        let c = coeffs.at(k, r[0], r[1]);
        let [(fv, _), (fa, _), (fg, _)] = load_fluxes(&c, g);
        let q = case.sources(t, x[0], x[1]).total();
        (q, std::array::from_fn(|i| -(fv[i] - fa[i] - fg[i])))
    });
    load.interior_face_terms(|face, s| {
        let (m1, k2, m2) = sides(face, 0.5);
        let mid1 = load_fluxes(&coeffs.at(face.k1, m1[0], m1[1]), g);
        let mid2 = load_fluxes(&coeffs.at(k2, m2[0], m2[1]), g);
        let (r1, _, r2) = sides(face, s);
        let f1 = load_fluxes(&coeffs.at(face.k1, r1[0], r1[1]), g);
        let f2 = load_fluxes(&coeffs.at(k2, r2[0], r2[1]), g);
        let n = face.normal;
        let dot = |v: [f64; 2]| v[0] * n[0] + v[1] * n[1];
        let mut avg = [0.0; 3];
        for i in 0..3 {
            let (w1, w2) = average_weights(mid1[i].1, mid2[i].1)?;
            avg[i] = w1 * dot(f1[i].0) + w2 * dot(f2[i].0);
        }
        Ok(avg[0] - avg[1] - avg[2])
    })?;
    add_neumann(&mut load, case, Unknown::Pressure, t);
    Ok(load.values)
}

pub(crate) fn add_neumann(load: &mut Load<'_>, case: &dyn Case, unknown: Unknown, t: f64) {
    load.boundary_terms(|face, s| {
        let side = face.side().expect("boundary face");
        if case.boundary().is_dirichlet(unknown, side) {
            return None;
        }
        let x = face.point(s);
        Some(case.neumann_flux(unknown, t, x[0], x[1], face.normal))
    });
}

/// Pressure system at time `t` with coefficients lagged in `coeffs`.
pub fn assemble_pressure(
    mesh: &Mesh,
    coeffs: &dyn Coefficients,
    case: &dyn Case,
    t: f64,
    ip: InteriorPenalty,
    exec: Execution,
) -> Result<LinearSystem> {
    let form = diffusion_form(mesh, coeffs, Unknown::Pressure, ip, exec)?;
    let mut matrix = form.matrix;
    let mut rhs = pressure_load(mesh, coeffs, case, t, exec)?;
    let constraints = dirichlet_constraints(mesh, case.boundary(), Unknown::Pressure, |x, y| {
        case.exact(Unknown::Pressure, t, x, y)
    })?;
    apply_dirichlet(&mut matrix, &mut rhs, &constraints);
    Ok(LinearSystem {
        matrix,
        rhs,
        constraints,
        degenerate_faces: 0,
    })
}

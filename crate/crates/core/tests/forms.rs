mod common;

use std::sync::Arc;

use common::{rng, rough_saturations, solve, unit_mesh, LinearCase};
use rand::Rng;
use threephase_dg::assembly::{
    assemble_pressure, assemble_saturation, diffusion_form, upwind_choices, upwind_first, FrozenCoefficients,
    InteriorPenalty, LaggedCoefficients, PointCoefficients, RtField, SaturationInputs, Theta, Coefficients,
};
use threephase_dg::dg::{star_norm, DgField, Unknown};
use threephase_dg::mesh::{Mesh, Side};
use threephase_dg::par::Execution;
use threephase_dg::physics::{BoundaryConditions, Case, FluidProperties, ManufacturedCase, Phases};

const SEQ: Execution = Execution::Sequential;

fn ip(theta: Theta, alpha: f64) -> InteriorPenalty {
    InteriorPenalty::new(theta, alpha).unwrap()
}

#[test]
fn symmetric_form_is_symmetric() {
    let mesh = unit_mesh(6);
    let (sa, sv) = rough_saturations(&mesh, 1);
    let fluids = FluidProperties::verification();
    let coeffs = LaggedCoefficients {
        aqueous: &sa,
        vapor: &sv,
        fluids: &fluids,
        eps: 1e-3,
    };
    for u in Unknown::ALL {
        let sym = diffusion_form(&mesh, &coeffs, u, ip(Theta::Symmetric, 10.0), SEQ).unwrap().matrix;
        let scale = sym.to_dense().iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(sym.asymmetry() <= 1e-12 * scale, "{u:?}: {}", sym.asymmetry());
        let nonsym = diffusion_form(&mesh, &coeffs, u, ip(Theta::NonSymmetric, 10.0), SEQ).unwrap().matrix;
        assert!(nonsym.asymmetry() > 1e-6);
    }
}

/// Largest sampled `|b(v, w)| / (|v|_* |w|_*)` over random pairs.
fn sampled_bound(n: usize, unknown: Unknown) -> f64 {
    let mesh = unit_mesh(n);
    let case = ManufacturedCase::constant_densities();
    let sa = DgField::interpolate(mesh.clone(), Unknown::Aqueous, |x, y| case.exact(Unknown::Aqueous, 0.5, x, y));
    let sv = DgField::interpolate(mesh.clone(), Unknown::Vapor, |x, y| case.exact(Unknown::Vapor, 0.5, x, y));
    let coeffs = LaggedCoefficients {
        aqueous: &sa,
        vapor: &sv,
        fluids: case.fluids(),
        eps: 1e-3,
    };
    let b = diffusion_form(&mesh, &coeffs, unknown, ip(Theta::NonSymmetric, 1.0), SEQ).unwrap().matrix;
    let mut r = rng(11);
    let field = |c: Vec<f64>| DgField::from_coeffs(mesh.clone(), unknown, c);
    (0..40)
        .map(|_| {
            let v = common::random_zero_trace(&mesh, unknown, &mut r);
            let w = common::random_zero_trace(&mesh, unknown, &mut r);
            let nv = star_norm(&field(v.clone()), SEQ);
            let nw = star_norm(&field(w.clone()), SEQ);
            b.bilinear(&v, &w).abs().max(b.bilinear(&v, &v).abs() * nw / nv) / (nv * nw)
        })
        .fold(0.0, f64::max)
}

#[test]
fn boundedness_constant_is_mesh_independent() {
    for u in Unknown::ALL {
        let c0 = sampled_bound(4, u);
        for n in [8, 16] {
            let c = sampled_bound(n, u);
            assert!(c <= 1.1 * c0, "{u:?} n={n}: {c} vs {c0}");
        }
    }
}

/// Euclidean norm of `A I_h p - b` on the free rows of the pressure system.
fn pressure_consistency_residual(n: usize) -> f64 {
    let mesh = unit_mesh(n);
    let case = ManufacturedCase::constant_densities();
    let t = 0.5;
    let exact = |u: Unknown| DgField::interpolate(mesh.clone(), u, |x, y| case.exact(u, t, x, y));
    let (p, sa, sv) = (exact(Unknown::Pressure), exact(Unknown::Aqueous), exact(Unknown::Vapor));
    let coeffs = LaggedCoefficients {
        aqueous: &sa,
        vapor: &sv,
        fluids: case.fluids(),
        eps: 1e-3,
    };
    let sys = assemble_pressure(&mesh, &coeffs, &case, t, ip(Theta::NonSymmetric, 1.0), SEQ).unwrap();
    let ap = sys.matrix.mul_vec(p.coeffs());
    ap.iter()
        .zip(&sys.rhs)
        .enumerate()
        .filter(|(d, _)| !sys.constraints.contains_key(d))
        .map(|(_, (a, b))| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

#[test]
fn consistency_residual_decreases() {
    let r: Vec<f64> = [4, 8, 16].map(pressure_consistency_residual).to_vec();
    assert!(r[1] < r[0] && r[2] < r[1], "{r:?}");
}

#[test]
fn upwind_matches_brute_force() {
    let mesh = unit_mesh(4);
    let (sa, sv) = rough_saturations(&mesh, 5);
    let fluids = FluidProperties::verification().with_gravity([0.03, -0.1]);
    let coeffs = LaggedCoefficients {
        aqueous: &sa,
        vapor: &sv,
        fluids: &fluids,
        eps: 1e-3,
    };
    let mut r = rng(9);
    let fluxes: Vec<f64> = (0..mesh.faces.len()).map(|_| r.random_range(-1.0..1.0)).collect();
    let u = RtField::from_fluxes(mesh.clone(), fluxes);
    for (unknown, rho) in [(Unknown::Aqueous, fluids.density.aqueous), (Unknown::Vapor, fluids.density.vapor)] {
        let choices = upwind_choices(&mesh, &coeffs, unknown, &u, rho, fluids.gravity, SEQ);
        for face in &mesh.faces {
            let Some(k2) = face.k2() else {
                assert_eq!(choices[face.id], None);
                continue;
            };
            let at = |k: usize| {
                let p = common::reference(&mesh, k, face.midpoint);
                coeffs.at(k, p[0], p[1])
            };
            let (c1, c2) = (at(face.k1), at(k2));
            let lam = |c: &PointCoefficients| c.advected_mobility(unknown);
            let un = u.normal_velocity(face.id);
            let gn = fluids.gravity[0] * face.normal[0] + fluids.gravity[1] * face.normal[1];
            let selector = 0.5 * (lam(&c1) + lam(&c2)) * un
                + 0.5 * (rho * c1.kappa * lam(&c1) + rho * c2.kappa * lam(&c2)) * gn;
            assert_eq!(choices[face.id], Some(selector >= 0.0), "face {}", face.id);
        }
    }
    assert!(upwind_first([0.2, 0.4], 0.0, [0.0, 0.0], 0.0));
}

/// Point coefficients varying in space, with identical aqueous and vapor data.
struct Mirrored;

impl Coefficients for Mirrored {
    fn at(&self, k: usize, xi: f64, eta: f64) -> PointCoefficients {
        let m = 0.2 + 0.05 * (k % 3) as f64 + 0.1 * xi * eta;
        PointCoefficients {
            kappa: 1.0 + 0.2 * xi,
            mobility: Phases::new(0.3, m, m),
            total: 0.3 + 2.0 * m,
            rho_total: 1.0,
            dpcv: 2.0 + eta,
            dpca_plus: 2.0 + eta,
            grad_pcv: [0.0; 2],
            grad_pca: [0.0; 2],
        }
    }
}

#[test]
fn aqueous_and_vapor_swap() {
    let mesh = unit_mesh(4);
    let mut case = LinearCase::new([[1.0, 0.0, 0.0], [0.3, 0.1, -0.05], [0.3, 0.1, -0.05]]);
    case.fluids.density = Phases::new(2.0, 1.5, 1.5);
    case.fluids.gravity = [0.0, -0.2];
    let mut r = rng(3);
    let prev = DgField::from_coeffs(mesh.clone(), Unknown::Aqueous, (0..mesh.n_dofs()).map(|_| r.random_range(0.1..0.5)).collect());
    let u = RtField::from_fluxes(mesh.clone(), (0..mesh.faces.len()).map(|_| r.random_range(-1.0..1.0)).collect());
    let system = |unknown| {
        let inputs = SaturationInputs {
            unknown,
            previous: &prev,
            velocity: &u,
            tau: 0.1,
            time: 0.0,
        };
        assemble_saturation(&mesh, &Mirrored, &case, inputs, ip(Theta::Incomplete, 3.0), SEQ).unwrap()
    };
    let a = system(Unknown::Aqueous);
    let v = system(Unknown::Vapor);
    assert_eq!(a.matrix, v.matrix);
    assert_eq!(a.rhs, v.rhs);
    assert_eq!(a.constraints, v.constraints);
}

#[test]
fn zero_form_keeps_saturation() {
    let mesh = unit_mesh(4);
    let mut case = LinearCase::standard();
    let mut bc = BoundaryConditions::all_dirichlet();
    for side in Side::ALL {
        bc.set(Unknown::Vapor, side, false);
    }
    case.boundary = bc;
    let mut coeffs = FrozenCoefficients::unit();
    coeffs.0.mobility.vapor = 0.0;
    let mut r = rng(4);
    let prev = DgField::from_coeffs(mesh.clone(), Unknown::Vapor, (0..mesh.n_dofs()).map(|_| r.random_range(0.1..0.5)).collect());
    let u = RtField::from_fluxes(mesh.clone(), (0..mesh.faces.len()).map(|_| r.random_range(-1.0..1.0)).collect());
    let inputs = SaturationInputs {
        unknown: Unknown::Vapor,
        previous: &prev,
        velocity: &u,
        tau: 0.05,
        time: 0.0,
    };
    let sys = assemble_saturation(&mesh, &coeffs, &case, inputs, ip(Theta::NonSymmetric, 1.0), SEQ).unwrap();
    assert!(sys.constraints.is_empty());
    assert_eq!(sys.degenerate_faces, mesh.interior_faces().count());
    let next = solve(&sys.matrix, &sys.rhs);
    for (a, b) in next.iter().zip(prev.coeffs()) {
        assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
    }
}

#[test]
fn dirichlet_values_are_exact_after_solve() {
    let mesh: Arc<Mesh> = unit_mesh(5);
    let case = ManufacturedCase::constant_densities();
    let sa = DgField::interpolate(mesh.clone(), Unknown::Aqueous, |x, y| case.exact(Unknown::Aqueous, 0.0, x, y));
    let sv = DgField::interpolate(mesh.clone(), Unknown::Vapor, |x, y| case.exact(Unknown::Vapor, 0.0, x, y));
    let coeffs = LaggedCoefficients {
        aqueous: &sa,
        vapor: &sv,
        fluids: case.fluids(),
        eps: 1e-3,
    };
    let sys = assemble_pressure(&mesh, &coeffs, &case, 0.2, ip(Theta::NonSymmetric, 1.0), SEQ).unwrap();
    assert_eq!(sys.constraints.len(), 4 * 5 * 2 - 4);
    let x = solve(&sys.matrix, &sys.rhs);
    for (&d, &g) in &sys.constraints {
        assert_eq!(x[d], g);
        let (k, node) = (d / 4, d % 4);
        let e = &mesh.elements[k];
        let (px, py) = (e.origin[0] + (node % 2) as f64 * e.dx, e.origin[1] + (node / 2) as f64 * e.dy);
        assert_eq!(g, case.exact(Unknown::Pressure, 0.2, px, py));
    }
}

#[test]
fn patch_solves_have_small_residual() {
    let mesh = unit_mesh(4);
    let case = LinearCase::standard();
    let coeffs = FrozenCoefficients::unit();
    for theta in Theta::ALL {
        let sys = assemble_pressure(&mesh, &coeffs, &case, 0.0, ip(theta, 10.0), SEQ).unwrap();
        let x = solve(&sys.matrix, &sys.rhs);
        let res = sys
            .matrix
            .mul_vec(&x)
            .iter()
            .zip(&sys.rhs)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        assert!(res <= 1e-11, "{theta:?}: {res}");
    }
}

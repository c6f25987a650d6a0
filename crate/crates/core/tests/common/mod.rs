#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use threephase_dg::assembly::{
    assemble_pressure, assemble_saturation, dirichlet_constraints, FrozenCoefficients, InteriorPenalty, RtField,
    SaturationInputs,
};
use threephase_dg::dg::{DgField, Unknown};
use threephase_dg::mesh::Mesh;
use threephase_dg::par::Execution;
use threephase_dg::physics::{clamp, mobilities, BoundaryConditions, Case, FluidProperties, Phases};
use threephase_dg::solver::{solve_linear, LinearSolver, PhaseState, DEFAULT_TOLERANCE};

/// `a + b x + c y` for each unknown, no sources, all-Dirichlet.
pub struct LinearCase {
    pub fluids: FluidProperties,
    pub boundary: BoundaryConditions,
    pub planes: [[f64; 3]; 3],
}

impl LinearCase {
    pub fn new(planes: [[f64; 3]; 3]) -> Self {
        LinearCase {
            fluids: FluidProperties::verification(),
            boundary: BoundaryConditions::all_dirichlet(),
            planes,
        }
    }

    pub fn standard() -> Self {
        Self::new([[1.0, 1.0, 1.0], [0.3, 0.1, -0.05], [0.4, -0.07, 0.12]])
    }
}

impl Case for LinearCase {
    fn fluids(&self) -> &FluidProperties {
        &self.fluids
    }

    fn boundary(&self) -> &BoundaryConditions {
        &self.boundary
    }

    fn exact(&self, unknown: Unknown, _t: f64, x: f64, y: f64) -> f64 {
        let [a, b, c] = self.planes[unknown.index()];
        a + b * x + c * y
    }

    fn sources(&self, _t: f64, _x: f64, _y: f64) -> Phases {
        Phases::default()
    }

    fn neumann_flux(&self, _unknown: Unknown, _t: f64, _x: f64, _y: f64, _n: [f64; 2]) -> f64 {
        0.0
    }
}

pub fn unit_mesh(n: usize) -> Arc<Mesh> {
    Arc::new(Mesh::unit_square(n).unwrap())
}

pub fn solve(matrix: &threephase_dg::assembly::CsrMatrix, rhs: &[f64]) -> Vec<f64> {
    solve_linear(matrix, rhs, DEFAULT_TOLERANCE, LinearSolver::Direct).unwrap()
}

/// Frozen-coefficient solve of `unknown` for a linear exact solution; returns
/// the max-norm distance to the nodal interpolant.
pub fn patch_error(mesh: &Arc<Mesh>, case: &LinearCase, unknown: Unknown, ip: InteriorPenalty) -> f64 {
    let coeffs = FrozenCoefficients::unit();
    let exec = Execution::Sequential;
    let exact = DgField::interpolate(mesh.clone(), unknown, |x, y| case.exact(unknown, 0.0, x, y));
    let sys = match unknown {
        Unknown::Pressure => assemble_pressure(mesh, &coeffs, case, 0.0, ip, exec).unwrap(),
        _ => {
            let u = RtField::zeros(mesh.clone());
            let inputs = SaturationInputs {
                unknown,
                previous: &exact,
                velocity: &u,
                tau: 1.0,
                time: 0.0,
            };
            assemble_saturation(mesh, &coeffs, case, inputs, ip, exec).unwrap()
        }
    };
    let x = solve(&sys.matrix, &sys.rhs);
    x.iter()
        .zip(exact.coeffs())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// Reference coordinates of physical point `p` in element `k`.
pub fn reference(mesh: &Mesh, k: usize, p: [f64; 2]) -> [f64; 2] {
    let e = &mesh.elements[k];
    [(p[0] - e.origin[0]) / e.dx, (p[1] - e.origin[1]) / e.dy]
}

/// Mean normal flux of `Pi_RT(-kappa grad P)` on every face, recomputed from
/// the face definitions with a two-point Gauss rule. Weights and penalty use
/// the face-midpoint traces of `kappa lambda_t` at the lagged saturations.
pub fn rt0_flux_oracle(pressure: &DgField, lagged: &PhaseState, fluids: &FluidProperties, eps: f64, alpha: f64) -> Vec<f64> {
    let mesh = pressure.mesh();
    let g = 0.5 / 3f64.sqrt();
    let gauss = [(0.5 - g, 0.5), (0.5 + g, 0.5)];
    let diffusivity = |k: usize, p: [f64; 2]| {
        let r = reference(mesh, k, p);
        let sa = lagged.aqueous.value(k, r[0], r[1]);
        let sv = lagged.vapor.value(k, r[0], r[1]);
        fluids.permeability.at(k) * mobilities(clamp(sa, sv, eps), fluids).total
    };
    let normal_grad = |k: usize, p: [f64; 2], n: [f64; 2]| {
        let r = reference(mesh, k, p);
        let (v, gr) = pressure.value_grad(k, r[0], r[1]);
        (v, fluids.permeability.at(k) * (gr[0] * n[0] + gr[1] * n[1]))
    };
    mesh.faces
        .iter()
        .map(|face| {
            let n = face.normal;
            match face.k2() {
                Some(k2) => {
                    let a1 = diffusivity(face.k1, face.midpoint);
                    let a2 = diffusivity(k2, face.midpoint);
                    let (w1, w2) = (a2 / (a1 + a2), a1 / (a1 + a2));
                    let eta = 2.0 * a1 * a2 / (a1 + a2);
                    gauss
                        .iter()
                        .map(|&(s, w)| {
                            let p = face.point(s);
                            let (p1, f1) = normal_grad(face.k1, p, n);
                            let (p2, f2) = normal_grad(k2, p, n);
                            w * (-(w1 * f1 + w2 * f2) + alpha / face.length * eta * (p1 - p2))
                        })
                        .sum()
                }
                None => gauss
                    .iter()
                    .map(|&(s, w)| -w * normal_grad(face.k1, face.point(s), n).1)
                    .sum(),
            }
        })
        .collect()
}

/// Largest per-element difference between the net outward flux of `u` and
/// the same sum built from independently computed face fluxes.
pub fn conservation_defect(u: &RtField, oracle: &[f64]) -> f64 {
    let mesh = u.mesh();
    (0..mesh.n_elements())
        .map(|k| {
            let expected: f64 = mesh.element_faces[k]
                .iter()
                .map(|&f| {
                    let face = &mesh.faces[f];
                    face.orientation(k) * oracle[f] * face.length
                })
                .sum();
            (u.divergence_integral(k) - expected).abs()
        })
        .fold(0.0, f64::max)
}

/// Largest mismatch of the normal velocity seen from the two sides of each
/// interior face, evaluated at the face midpoint.
pub fn normal_trace_mismatch(u: &RtField) -> f64 {
    let mesh = u.mesh();
    mesh.interior_faces()
        .map(|face| {
            let k2 = face.k2().unwrap();
            let n = face.normal;
            let r1 = reference(mesh, face.k1, face.midpoint);
            let r2 = reference(mesh, k2, face.midpoint);
            let v1 = u.velocity(face.k1, r1[0], r1[1]);
            let v2 = u.velocity(k2, r2[0], r2[1]);
            ((v1[0] - v2[0]) * n[0] + (v1[1] - v2[1]) * n[1]).abs()
        })
        .fold(0.0, f64::max)
}

/// Random vector vanishing on the Dirichlet nodes of `unknown`.
pub fn random_zero_trace(mesh: &Mesh, unknown: Unknown, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let fixed = dirichlet_constraints(mesh, &BoundaryConditions::all_dirichlet(), unknown, |_, _| 0.0).unwrap();
    (0..mesh.n_dofs())
        .map(|d| if fixed.contains_key(&d) { 0.0 } else { rng.random_range(-1.0..1.0) })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Lagged saturations: smooth positive fields with a small random
/// discontinuous perturbation.
pub fn rough_saturations(mesh: &Arc<Mesh>, seed: u64) -> (DgField, DgField) {
    let mut r = rng(seed);
    let mut sa = DgField::interpolate(mesh.clone(), Unknown::Aqueous, |x, y| 0.2 + 0.1 * x * y);
    let mut sv = DgField::interpolate(mesh.clone(), Unknown::Vapor, |x, y| 0.35 - 0.05 * x + 0.03 * y);
    for c in sa.coeffs_mut() {
        *c += r.random_range(-0.02..0.02);
    }
    for c in sv.coeffs_mut() {
        *c += r.random_range(-0.02..0.02);
    }
    (sa, sv)
}

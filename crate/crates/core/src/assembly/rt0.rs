//! Lowest-order Raviart-Thomas projection of the discrete velocity.
//!
//! One normal flux per face, relative to the stored face normal:
//!
//! ```text
//! interior: U_e = |e|^{-1} int_e ( -{kappa grad P . n_e}_w + alpha |e|^{-1} eta_e [P] )
//! boundary: U_e = |e|^{-1} int_e ( -kappa grad P . n_e )
//! ```
//!
//! with weights and `eta_e` from the midpoint traces of `kappa lambda_t`.

use std::sync::Arc;

use super::coefficients::Coefficients;
use super::form::{face_averages, sides};
use super::InteriorPenalty;
use crate::dg::{DgField, QuadratureRule, Unknown};
use crate::error::Result;
use crate::mesh::{LocalFace, Mesh};
use crate::par::Execution;

/// A velocity in the lowest-order Raviart-Thomas space on a rectangular mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct RtField {
    mesh: Arc<Mesh>,
    /// Mean normal velocity on each face, along the stored normal.
    pub fluxes: Vec<f64>,
}

impl RtField {
    pub fn from_fluxes(mesh: Arc<Mesh>, fluxes: Vec<f64>) -> Self {
        assert_eq!(fluxes.len(), mesh.faces.len());
        RtField { mesh, fluxes }
    }

    pub fn zeros(mesh: Arc<Mesh>) -> Self {
        let n = mesh.faces.len();
        RtField {
            mesh,
            fluxes: vec![0.0; n],
        }
    }

    pub fn mesh(&self) -> &Arc<Mesh> {
        &self.mesh
    }

    /// Normal velocity across face `f` along its stored normal.
    #[inline]
    pub fn normal_velocity(&self, f: usize) -> f64 {
        self.fluxes[f]
    }

    /// Outward normal velocity of element `k` through its local face.
    fn outward(&self, k: usize, local: LocalFace) -> f64 {
        let f = self.mesh.element_faces[k][local as usize];
        self.fluxes[f] * self.mesh.faces[f].orientation(k)
    }

    /// Velocity at reference point `(xi, eta)` of element `k`.
    pub fn velocity(&self, k: usize, xi: f64, eta: f64) -> [f64; 2] {
        // The outward normal of the left/bottom face is -x/-y.
        let left = -self.outward(k, LocalFace::Left);
        let right = self.outward(k, LocalFace::Right);
        let bottom = -self.outward(k, LocalFace::Bottom);
        let top = self.outward(k, LocalFace::Top);
        [(1.0 - xi) * left + xi * right, (1.0 - eta) * bottom + eta * top]
    }

    /// `int_K div u`, the net outward flux of element `k`.
    pub fn divergence_integral(&self, k: usize) -> f64 {
        let e = &self.mesh.elements[k];
        let [l, r, b, t] = [LocalFace::Left, LocalFace::Right, LocalFace::Bottom, LocalFace::Top].map(|f| self.outward(k, f));
        (l + r) * e.dy + (b + t) * e.dx
    }

    /// Pointwise divergence, constant on each element.
    pub fn divergence(&self, k: usize) -> f64 {
        self.divergence_integral(k) / self.mesh.elements[k].area()
    }
}

/// Projects the discrete velocity of `pressure` onto the RT0 space.
pub fn rt0_project(
    pressure: &DgField,
    coeffs: &dyn Coefficients,
    ip: InteriorPenalty,
    exec: Execution,
) -> Result<RtField> {
    let mesh = pressure.mesh();
    let averages = face_averages(mesh, coeffs, Unknown::Pressure, exec)?;
    let line = QuadratureRule::face();
    let fluxes = exec.map(mesh.faces.len(), |f| {
        let face = &mesh.faces[f];
        let n = face.normal;
        let mut total = 0.0;
        match averages[f] {
            Some(avg) => {
                for (q, w) in line.iter() {
                    let (r1, k2, r2) = sides(face, q[0]);
                    let (p1, g1) = pressure.value_grad(face.k1, r1[0], r1[1]);
                    let (p2, g2) = pressure.value_grad(k2, r2[0], r2[1]);
                    let kap1 = coeffs.at(face.k1, r1[0], r1[1]).kappa;
                    let kap2 = coeffs.at(k2, r2[0], r2[1]).kappa;
                    let flux = avg.w1 * kap1 * (g1[0] * n[0] + g1[1] * n[1]) + avg.w2 * kap2 * (g2[0] * n[0] + g2[1] * n[1]);
                    total += w * (-flux + ip.alpha / face.length * avg.eta * (p1 - p2));
                }
            }
            None => {
                for (q, w) in line.iter() {
                    let r = face.local1.reference_point(q[0]);
                    let (_, g) = pressure.value_grad(face.k1, r[0], r[1]);
                    let kap = coeffs.at(face.k1, r[0], r[1]).kappa;
                    total -= w * kap * (g[0] * n[0] + g[1] * n[1]);
                }
            }
        }
        total
    });
    Ok(RtField::from_fluxes(mesh.clone(), fluxes))
}

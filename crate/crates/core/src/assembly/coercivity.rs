//! Advisory penalty thresholds for the non-symmetric variants.
//!
//! A form with symmetrization `theta` is coercive once
//!
//! ```text
//! alpha > 0.25 (1 - theta)^2 (C_hi kappa^*)^3 / (C_lo kappa_*)^3 C_tr^2
//! ```
//!
//! where `[C_lo, C_hi]` bounds the non-permeability part of the diffusivity
//! and `C_tr` is the discrete trace constant `||v||_e^2 <= C_tr^2 h_K^{-1} ||v||_K^2`.

use nalgebra::{Matrix4, SymmetricEigen};

use super::SchemeConfig;
use crate::dg::basis::shape_values;
use crate::dg::{QuadratureRule, Unknown};
use crate::mesh::{Element, LocalFace, Mesh};
use crate::physics::{capillary_pressure_a, capillary_pressure_v, clamp, mobilities, FluidProperties};

/// Lower and upper bound of a coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

impl Bounds {
    pub fn ratio(&self) -> f64 {
        self.upper / self.lower
    }
}

/// The penalty threshold for one equation.
pub fn penalty_threshold(theta: f64, coefficient: Bounds, kappa: Bounds, c_tr: f64) -> f64 {
    let r = (coefficient.upper * kappa.upper) / (coefficient.lower * kappa.lower);
    0.25 * (1.0 - theta).powi(2) * r.powi(3) * c_tr * c_tr
}

/// `C_tr` of one element: the square root of `h_K` times the largest
/// generalized eigenvalue of the face-trace mass matrices against the cell
/// mass matrix.
pub fn trace_constant(element: &Element) -> f64 {
    let cell = QuadratureRule::gauss_square(3);
    let line = QuadratureRule::gauss_line(3);
    let mut mk = Matrix4::<f64>::zeros();
    for (p, w) in cell.iter() {
        let v = shape_values(p[0], p[1]);
        for i in 0..4 {
            for j in 0..4 {
                mk[(i, j)] += w * element.area() * v[i] * v[j];
            }
        }
    }
    let chol = mk.cholesky().expect("cell mass matrix is positive definite");
    let l_inv = chol.l().try_inverse().expect("invertible Cholesky factor");
    let mut worst: f64 = 0.0;
    for face in [LocalFace::Left, LocalFace::Right, LocalFace::Bottom, LocalFace::Top] {
        let len = match face {
            LocalFace::Left | LocalFace::Right => element.dy,
            LocalFace::Bottom | LocalFace::Top => element.dx,
        };
        let mut me = Matrix4::<f64>::zeros();
        for (q, w) in line.iter() {
            let r = face.reference_point(q[0]);
            let v = shape_values(r[0], r[1]);
            for i in 0..4 {
                for j in 0..4 {
                    me[(i, j)] += w * len * v[i] * v[j];
                }
            }
        }
        let s = l_inv * me * l_inv.transpose();
        let lmax = SymmetricEigen::new(s).eigenvalues.max();
        worst = worst.max(lmax);
    }
    (worst * element.diameter).sqrt()
}

/// Largest element trace constant of the mesh.
pub fn mesh_trace_constant(mesh: &Mesh) -> f64 {
    mesh.elements.iter().map(trace_constant).fold(0.0, f64::max)
}

/// Bounds of the diffusivity factor of `unknown` (without permeability) over
/// clamped saturations in the given ranges, sampled on a uniform grid.
pub fn coefficient_bounds(
    unknown: Unknown,
    fluids: &FluidProperties,
    aqueous: (f64, f64),
    vapor: (f64, f64),
    eps: f64,
    samples: usize,
) -> Bounds {
    let n = samples.max(2);
    let mut b = Bounds {
        lower: f64::INFINITY,
        upper: 0.0,
    };
    for i in 0..n {
        for j in 0..n {
            let sa = aqueous.0 + (aqueous.1 - aqueous.0) * i as f64 / (n - 1) as f64;
            let sv = vapor.0 + (vapor.1 - vapor.0) * j as f64 / (n - 1) as f64;
            let s = clamp(sa, sv, eps);
            let m = mobilities(s, fluids);
            let v = match unknown {
                Unknown::Pressure => m.total,
                Unknown::Aqueous => m.phase.aqueous * capillary_pressure_a(s.aqueous).expect("clamped").positive_part,
                Unknown::Vapor => m.phase.vapor * capillary_pressure_v(s.vapor).expect("clamped").derivative,
            };
            b.lower = b.lower.min(v);
            b.upper = b.upper.max(v);
        }
    }
    b
}

/// Threshold per equation, with a message for each configured penalty below it.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    /// Pressure, aqueous and vapor thresholds.
    pub thresholds: [f64; 3],
    pub warnings: Vec<String>,
}

/// Checks every configured penalty against its threshold.
pub fn check_coercivity_threshold(
    cfg: &SchemeConfig,
    bounds: [Bounds; 3],
    kappa: Bounds,
    c_tr: f64,
) -> ThresholdReport {
    let mut thresholds = [0.0; 3];
    let mut warnings = Vec::new();
    for u in Unknown::ALL {
        let ip = cfg.penalty(u);
        let th = penalty_threshold(ip.theta.value(), bounds[u.index()], kappa, c_tr);
        thresholds[u.index()] = th;
        if ip.theta.value() != 1.0 && ip.alpha <= th {
            warnings.push(format!(
                "{} penalty {} is below the coercivity threshold {:.3e}",
                u.label(),
                ip.alpha,
                th
            ));
        }
    }
    ThresholdReport { thresholds, warnings }
}

//! Piecewise-Q1 fields, trace operators and the L2 projection.

use std::sync::{Arc, OnceLock};

use nalgebra::{Matrix4, Vector4};

use super::basis::{eval_basis, shape_values};
use super::quadrature::QuadratureRule;
use crate::error::{Error, Result};
use crate::mesh::{Face, FaceKind, Mesh};
use crate::par::Execution;

/// Which primary unknown a field represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unknown {
    Pressure,
    Aqueous,
    Vapor,
}

impl Unknown {
    pub const ALL: [Unknown; 3] = [Unknown::Pressure, Unknown::Aqueous, Unknown::Vapor];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Unknown::Pressure => "p",
            Unknown::Aqueous => "sa",
            Unknown::Vapor => "sv",
        }
    }
}

/// Discontinuous Q1 field: four nodal coefficients per element, in the
/// tensor node order of [`super::basis`].
#[derive(Debug, Clone)]
pub struct DgField {
    mesh: Arc<Mesh>,
    coeffs: Vec<f64>,
    pub unknown: Unknown,
}

impl PartialEq for DgField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.mesh, &other.mesh)
            && self.unknown == other.unknown
            && self.coeffs == other.coeffs
    }
}

impl DgField {
    pub fn zeros(mesh: Arc<Mesh>, unknown: Unknown) -> Self {
        let n = mesh.n_dofs();
        DgField {
            mesh,
            coeffs: vec![0.0; n],
            unknown,
        }
    }

    pub fn from_coeffs(mesh: Arc<Mesh>, unknown: Unknown, coeffs: Vec<f64>) -> Self {
        assert_eq!(coeffs.len(), mesh.n_dofs(), "coefficient count must be 4 per element");
        DgField {
            mesh,
            coeffs,
            unknown,
        }
    }

    /// Field whose element blocks hold the nodal values of `f` (the nodal
    /// interpolant, element by element).
    pub fn interpolate(mesh: Arc<Mesh>, unknown: Unknown, f: impl Fn(f64, f64) -> f64) -> Self {
        let coeffs = mesh
            .elements
            .iter()
            .flat_map(|e| e.vertices())
            .map(|p| f(p[0], p[1]))
            .collect();
        DgField {
            mesh,
            coeffs,
            unknown,
        }
    }

    pub fn mesh(&self) -> &Arc<Mesh> {
        &self.mesh
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn block(&self, k: usize) -> [f64; 4] {
        let c = &self.coeffs[4 * k..4 * k + 4];
        [c[0], c[1], c[2], c[3]]
    }

    /// Value at reference point `(xi, eta)` of element `k`.
    #[inline]
    pub fn value(&self, k: usize, xi: f64, eta: f64) -> f64 {
        let n = shape_values(xi, eta);
        let c = &self.coeffs[4 * k..4 * k + 4];
        n[0] * c[0] + n[1] * c[1] + n[2] * c[2] + n[3] * c[3]
    }

    /// Value and physical gradient at reference point `(xi, eta)` of element `k`.
    #[inline]
    pub fn value_grad(&self, k: usize, xi: f64, eta: f64) -> (f64, [f64; 2]) {
        let b = eval_basis(&self.mesh.elements[k], xi, eta);
        let c = &self.coeffs[4 * k..4 * k + 4];
        let mut v = 0.0;
        let mut g = [0.0; 2];
        for n in 0..4 {
            v += b.values[n] * c[n];
            g[0] += b.gradients[n][0] * c[n];
            g[1] += b.gradients[n][1] * c[n];
        }
        (v, g)
    }

    /// Traces of the field on `face` at arc parameter `s`.
    pub fn trace(&self, face: &Face, s: f64) -> FaceTrace {
        let r1 = face.local1.reference_point(s);
        let first = self.value(face.k1, r1[0], r1[1]);
        let second = match face.kind {
            FaceKind::Interior { k2, local2 } => {
                let r2 = local2.reference_point(s);
                Some(self.value(k2, r2[0], r2[1]))
            }
            FaceKind::Boundary { .. } => None,
        };
        FaceTrace { first, second }
    }

    /// Largest and smallest nodal coefficient.
    pub fn coeff_range(&self) -> (f64, f64) {
        self.coeffs
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &c| (lo.min(c), hi.max(c)))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Coefficient-wise difference `self - other`.
    pub fn sub(&self, other: &DgField) -> DgField {
        assert!(Arc::ptr_eq(&self.mesh, &other.mesh), "fields live on different meshes");
        DgField {
            mesh: self.mesh.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
            unknown: self.unknown,
        }
    }
}

/// One or two traces of a scalar on a face.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceTrace {
    /// Trace from `K1`.
    pub first: f64,
    /// Trace from `K2` on interior faces.
    pub second: Option<f64>,
}

impl FaceTrace {
    /// `f1 - f2` on interior faces, the single trace on boundary faces.
    pub fn jump(&self) -> f64 {
        match self.second {
            Some(f2) => self.first - f2,
            None => self.first,
        }
    }

    /// Plain average `(f1 + f2) / 2`; the single trace on boundary faces.
    pub fn average(&self) -> f64 {
        match self.second {
            Some(f2) => 0.5 * (self.first + f2),
            None => self.first,
        }
    }
}

/// Jump of `field` across `face` at arc parameter `s`.
pub fn jump(field: &DgField, face: &Face, s: f64) -> f64 {
    field.trace(face, s).jump()
}

/// Weights `(w1, w2) = (A2, A1) / (A1 + A2)` of the diffusivity-weighted average.
#[inline]
pub fn weights(a1: f64, a2: f64) -> Result<(f64, f64)> {
    let sum = a1 + a2;
    if sum == 0.0 || !sum.is_finite() {
        return Err(Error::DegenerateWeights(sum));
    }
    Ok((a2 / sum, a1 / sum))
}

/// Weighted average `w1 * v1 + w2 * v2` with weights taken from the
/// diffusivities `a1`, `a2`.
pub fn weighted_average(v1: f64, v2: f64, a1: f64, a2: f64) -> Result<f64> {
    let (w1, w2) = weights(a1, a2)?;
    Ok(w1 * v1 + w2 * v2)
}

fn reference_mass_inverse() -> Result<&'static Matrix4<f64>> {
    static INV: OnceLock<Option<Matrix4<f64>>> = OnceLock::new();
    INV.get_or_init(|| {
        let q = QuadratureRule::cell();
        let mut m = Matrix4::zeros();
        for (p, w) in q.iter() {
            let n = shape_values(p[0], p[1]);
            for i in 0..4 {
                for j in 0..4 {
                    m[(i, j)] += w * n[i] * n[j];
                }
            }
        }
        m.try_inverse()
    })
    .as_ref()
    .ok_or(Error::SingularMassMatrix(0))
}

/// L2 projection of `f` onto the discontinuous Q1 space of `mesh`.
pub fn l2_project(
    mesh: &Arc<Mesh>,
    unknown: Unknown,
    f: impl Fn(f64, f64) -> f64 + Sync + Send,
    exec: Execution,
) -> Result<DgField> {
    let minv = reference_mass_inverse()?;
    let q = QuadratureRule::cell();
    let blocks = exec.map(mesh.n_elements(), |k| {
        let e = &mesh.elements[k];
        if !(e.area() > 0.0) {
            return Err(Error::SingularMassMatrix(k));
        }
        // With M_K = |K| M_ref and b_i = |K| sum_q w_q f N_i, the area cancels.
        let mut b = Vector4::zeros();
        for (p, w) in q.iter() {
            let x = e.map(p[0], p[1]);
            let fv = f(x[0], x[1]);
            let n = shape_values(p[0], p[1]);
            for i in 0..4 {
                b[i] += w * fv * n[i];
            }
        }
        Ok(minv * b)
    });
    let mut coeffs = Vec::with_capacity(mesh.n_dofs());
    for blk in blocks {
        coeffs.extend(blk?.iter());
    }
    Ok(DgField::from_coeffs(mesh.clone(), unknown, coeffs))
}

/// `||field - exact||_{L2}` computed with the 5x5 Gauss rule.
pub fn l2_error(field: &DgField, exact: impl Fn(f64, f64) -> f64 + Sync + Send, exec: Execution) -> f64 {
    let mesh = field.mesh();
    let q = QuadratureRule::gauss_square(5);
    exec.sum(mesh.n_elements(), |k| {
        let e = &mesh.elements[k];
        q.iter()
            .map(|(p, w)| {
                let x = e.map(p[0], p[1]);
                let d = field.value(k, p[0], p[1]) - exact(x[0], x[1]);
                w * d * d
            })
            .sum::<f64>()
            * e.area()
    })
    .sqrt()
}

//! The interior-penalty diffusion form shared by the three equations and
//! generic load-vector builders.
//!
//! For a diffusivity `A` the form reads
//!
//! ```text
//! b(v, w) = sum_K (A grad v, grad w)_K
//!         + sum_e alpha h_e^{-1} (eta_e [v], [w])_e
//!         - sum_e ({A grad v . n_e}, [w])_e
//!         + theta sum_e ({A grad w . n_e}, [v])_e
//! ```
//!
//! over interior faces, with `eta_e` the harmonic mean of the two traces of `A`
//! and `{.}` the average with weights `(A2, A1) / (A1 + A2)`. Weights and
//! `eta_e` use the traces at the face midpoint.

use super::coefficients::Coefficients;
use super::sparse::{BlockAssembler, CsrMatrix};
use super::{harmonic_penalty, InteriorPenalty};
use crate::dg::basis::eval_basis;
use crate::dg::{weights, QuadratureRule, Unknown};
use crate::error::{Error, Result};
use crate::mesh::{Face, FaceKind, Mesh};
use crate::par::Execution;

/// Averaging data of one interior face.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceAverage {
    pub w1: f64,
    pub w2: f64,
    /// Harmonic mean of the midpoint traces.
    pub eta: f64,
    /// Both traces vanish: plain average and zero penalty were used.
    pub degenerate: bool,
}

impl FaceAverage {
    /// Weights and penalty scaling from the midpoint traces `a1`, `a2`.
    /// Zero traces are accepted only when `allow_zero` is set.
    pub fn from_traces(a1: f64, a2: f64, allow_zero: bool, face: usize, what: &'static str) -> Result<Self> {
        for a in [a1, a2] {
            if !(a > 0.0 || (allow_zero && a == 0.0)) {
                return Err(Error::NonPositiveCoefficient { what, face, value: a });
            }
        }
        if a1 + a2 == 0.0 {
            return Ok(FaceAverage {
                w1: 0.5,
                w2: 0.5,
                eta: 0.0,
                degenerate: true,
            });
        }
        let (w1, w2) = weights(a1, a2)?;
        Ok(FaceAverage {
            w1,
            w2,
            eta: harmonic_penalty(a1, a2)?,
            degenerate: false,
        })
    }
}

/// Reference points of the two sides of an interior face at parameter `s`.
#[inline]
pub(crate) fn sides(face: &Face, s: f64) -> ([f64; 2], usize, [f64; 2]) {
    let FaceKind::Interior { k2, local2 } = face.kind else {
        panic!("face {} is not interior", face.id)
    };
    (face.local1.reference_point(s), k2, local2.reference_point(s))
}

pub(crate) fn coefficient_label(unknown: Unknown) -> &'static str {
    match unknown {
        Unknown::Pressure => "pressure diffusivity",
        Unknown::Aqueous => "aqueous diffusivity",
        Unknown::Vapor => "vapor diffusivity",
    }
}

/// Face averaging data for the diffusivity of `unknown` on every face
/// (`None` on boundary faces).
pub fn face_averages(
    mesh: &Mesh,
    coeffs: &dyn Coefficients,
    unknown: Unknown,
    exec: Execution,
) -> Result<Vec<Option<FaceAverage>>> {
    exec.map(mesh.faces.len(), |f| {
        let face = &mesh.faces[f];
        if !face.is_interior() {
            return Ok(None);
        }
        let (r1, k2, r2) = sides(face, 0.5);
        let a1 = coeffs.at(face.k1, r1[0], r1[1]).diffusivity(unknown);
        let a2 = coeffs.at(k2, r2[0], r2[1]).diffusivity(unknown);
        FaceAverage::from_traces(a1, a2, unknown == Unknown::Vapor, f, coefficient_label(unknown)).map(Some)
    })
    .into_iter()
    .collect()
}

/// Assembled diffusion form before any boundary constraint.
#[derive(Debug, Clone)]
pub struct DiffusionForm {
    pub matrix: CsrMatrix,
    pub averages: Vec<Option<FaceAverage>>,
}

impl DiffusionForm {
    pub fn degenerate_faces(&self) -> usize {
        self.averages.iter().flatten().filter(|a| a.degenerate).count()
    }
}

/// Assembles the interior-penalty form of the equation for `unknown`.
pub fn diffusion_form(
    mesh: &Mesh,
    coeffs: &dyn Coefficients,
    unknown: Unknown,
    ip: InteriorPenalty,
    exec: Execution,
) -> Result<DiffusionForm> {
    let cell = QuadratureRule::cell();
    let line = QuadratureRule::face();
    let theta = ip.theta.value();

    let cell_blocks = exec.map(mesh.n_elements(), |k| {
        let e = &mesh.elements[k];
        let mut blk = [[0.0; 4]; 4];
        for (p, w) in cell.iter() {
            let a = coeffs.at(k, p[0], p[1]).diffusivity(unknown);
            let g = eval_basis(e, p[0], p[1]).gradients;
            let s = w * e.area() * a;
            for i in 0..4 {
                for j in 0..4 {
                    blk[i][j] += s * (g[i][0] * g[j][0] + g[i][1] * g[j][1]);
                }
            }
        }
        blk
    });

    let averages = face_averages(mesh, coeffs, unknown, exec)?;

    let face_blocks = exec.map(mesh.faces.len(), |f| {
        let face = &mesh.faces[f];
        let avg = averages[f]?;
        let (_, k2, _) = sides(face, 0.5);
        let n = face.normal;
        let len = face.length;
        let mut blk = [[0.0; 8]; 8];
        for (q, w) in line.iter() {
            let (r1, _, r2) = sides(face, q[0]);
            let b1 = eval_basis(&mesh.elements[face.k1], r1[0], r1[1]);
            let b2 = eval_basis(&mesh.elements[k2], r2[0], r2[1]);
            let a1 = coeffs.at(face.k1, r1[0], r1[1]).diffusivity(unknown);
            let a2 = coeffs.at(k2, r2[0], r2[1]).diffusivity(unknown);
            let mut jump = [0.0; 8];
            let mut flux = [0.0; 8];
            for i in 0..4 {
                jump[i] = b1.values[i];
                jump[4 + i] = -b2.values[i];
                flux[i] = avg.w1 * a1 * (b1.gradients[i][0] * n[0] + b1.gradients[i][1] * n[1]);
                flux[4 + i] = avg.w2 * a2 * (b2.gradients[i][0] * n[0] + b2.gradients[i][1] * n[1]);
            }
            let pen = ip.alpha / len * avg.eta;
            let wl = w * len;
            // Row: test function, column: trial function.
            for a in 0..8 {
                for b in 0..8 {
                    blk[a][b] += wl * (pen * jump[a] * jump[b] - flux[b] * jump[a] + theta * flux[a] * jump[b]);
                }
            }
        }
        Some((face.k1, k2, blk))
    });

    let mut asm = BlockAssembler::new(mesh);
    for (k, blk) in cell_blocks.iter().enumerate() {
        asm.add_block(k, k, blk);
    }
    for (k1, k2, blk) in face_blocks.into_iter().flatten() {
        let els = [k1, k2];
        for (bi, &ri) in els.iter().enumerate() {
            for (bj, &cj) in els.iter().enumerate() {
                let sub: [[f64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| blk[4 * bi + i][4 * bj + j]));
                asm.add_block(ri, cj, &sub);
            }
        }
    }
    Ok(DiffusionForm {
        matrix: asm.finish(),
        averages,
    })
}

/// Scaled mass matrix `scale * (v, w)`.
pub fn mass_matrix(mesh: &Mesh, scale: f64) -> CsrMatrix {
    let cell = QuadratureRule::cell();
    let mut asm = BlockAssembler::new(mesh);
    for (k, e) in mesh.elements.iter().enumerate() {
        let mut blk = [[0.0; 4]; 4];
        for (p, w) in cell.iter() {
            let v = eval_basis(e, p[0], p[1]).values;
            for i in 0..4 {
                for j in 0..4 {
                    blk[i][j] += scale * w * e.area() * v[i] * v[j];
                }
            }
        }
        asm.add_block(k, k, &blk);
    }
    asm.finish()
}

/// Load vector accumulator.
#[derive(Debug, Clone)]
pub(crate) struct Load<'m> {
    mesh: &'m Mesh,
    exec: Execution,
    pub(crate) values: Vec<f64>,
}

impl<'m> Load<'m> {
    pub(crate) fn new(mesh: &'m Mesh, exec: Execution) -> Self {
        Load {
            mesh,
            exec,
            values: vec![0.0; mesh.n_dofs()],
        }
    }

    /// Adds `sum_K int_K (s w + V . grad w)` where `f(k, xi, eta, x)` returns `(s, V)`.
    pub(crate) fn cell_terms<F>(&mut self, f: F)
    where
        F: Fn(usize, [f64; 2], [f64; 2]) -> (f64, [f64; 2]) + Sync + Send,
    {
        let cell = QuadratureRule::cell();
        let mesh = self.mesh;
        let blocks = self.exec.map(mesh.n_elements(), |k| {
            let e = &mesh.elements[k];
            let mut b = [0.0; 4];
            for (p, w) in cell.iter() {
                let x = e.map(p[0], p[1]);
                let (s, v) = f(k, p, x);
                let basis = eval_basis(e, p[0], p[1]);
                let wa = w * e.area();
                for i in 0..4 {
                    b[i] += wa * (s * basis.values[i] + v[0] * basis.gradients[i][0] + v[1] * basis.gradients[i][1]);
                }
            }
            b
        });
        for (k, b) in blocks.iter().enumerate() {
            for i in 0..4 {
                self.values[4 * k + i] += b[i];
            }
        }
    }

    /// Adds `sum_e int_e g [w]` over interior faces, `g(face, s)`.
    pub(crate) fn interior_face_terms<F>(&mut self, g: F) -> Result<()>
    where
        F: Fn(&Face, f64) -> Result<f64> + Sync + Send,
    {
        let line = QuadratureRule::face();
        let mesh = self.mesh;
        let blocks = self.exec.map(mesh.faces.len(), |f| -> Result<Option<(usize, usize, [f64; 8])>> {
            let face = &mesh.faces[f];
            if !face.is_interior() {
                return Ok(None);
            }
            let (_, k2, _) = sides(face, 0.5);
            let mut b = [0.0; 8];
            for (q, w) in line.iter() {
                let (r1, _, r2) = sides(face, q[0]);
                let v1 = eval_basis(&mesh.elements[face.k1], r1[0], r1[1]).values;
                let v2 = eval_basis(&mesh.elements[k2], r2[0], r2[1]).values;
                let gv = g(face, q[0])? * w * face.length;
                for i in 0..4 {
                    b[i] += gv * v1[i];
                    b[4 + i] -= gv * v2[i];
                }
            }
            Ok(Some((face.k1, k2, b)))
        });
        for blk in blocks {
            if let Some((k1, k2, b)) = blk? {
                for i in 0..4 {
                    self.values[4 * k1 + i] += b[i];
                    self.values[4 * k2 + i] += b[4 + i];
                }
            }
        }
        Ok(())
    }

    /// Adds `int_e j w` over the boundary faces selected by `j(face, s)`
    /// returning `Some`.
    pub(crate) fn boundary_terms<F>(&mut self, j: F)
    where
        F: Fn(&Face, f64) -> Option<f64> + Sync + Send,
    {
        let line = QuadratureRule::face();
        let mesh = self.mesh;
        for face in mesh.boundary_faces() {
            let mut b = [0.0; 4];
            let mut any = false;
            for (q, w) in line.iter() {
                if let Some(v) = j(face, q[0]) {
                    any = true;
                    let r = face.local1.reference_point(q[0]);
                    let basis = eval_basis(&mesh.elements[face.k1], r[0], r[1]).values;
                    for i in 0..4 {
                        b[i] += w * face.length * v * basis[i];
                    }
                }
            }
            if any {
                for i in 0..4 {
                    self.values[4 * face.k1 + i] += b[i];
                }
            }
        }
    }
}

//! Broken energy norms used by error reports and stability checks.

use super::field::DgField;
use super::quadrature::QuadratureRule;
use crate::mesh::{FaceKind, LocalFace};
use crate::par::Execution;

/// Broken gradient norm `||grad_h w||`.
pub fn gradient_norm(field: &DgField, exec: Execution) -> f64 {
    let mesh = field.mesh();
    let q = QuadratureRule::cell();
    exec.sum(mesh.n_elements(), |k| {
        let area = mesh.elements[k].area();
        q.iter()
            .map(|(p, w)| {
                let (_, g) = field.value_grad(k, p[0], p[1]);
                w * area * (g[0] * g[0] + g[1] * g[1])
            })
            .sum()
    })
    .sqrt()
}

/// Jump seminorm `(sum_e h_e^{-1} ||[w]||_e^2)^{1/2}` over interior faces.
pub fn jump_seminorm(field: &DgField, exec: Execution) -> f64 {
    let mesh = field.mesh();
    let q = QuadratureRule::face();
    exec.sum(mesh.faces.len(), |f| {
        let face = &mesh.faces[f];
        if !face.is_interior() {
            return 0.0;
        }
        // h_e^{-1} * |e| * sum_q w_q [w]^2 with |e| = h_e.
        q.iter()
            .map(|(p, w)| {
                let j = field.trace(face, p[0]).jump();
                w * j * j
            })
            .sum()
    })
    .sqrt()
}

/// Coercivity norm `(||grad_h w||^2 + |w|_J^2)^{1/2}`.
pub fn coercivity_norm(field: &DgField, exec: Execution) -> f64 {
    gradient_norm(field, exec).hypot(jump_seminorm(field, exec))
}

/// Coercivity norm augmented with `sum_K h_K ||grad w . n_K||^2_{dK}`.
pub fn star_norm(field: &DgField, exec: Execution) -> f64 {
    let mesh = field.mesh();
    let q = QuadratureRule::face();
    let extra = exec.sum(mesh.n_elements(), |k| {
        let e = &mesh.elements[k];
        LocalFace::ALL
            .iter()
            .map(|&lf| {
                let n = lf.outward_normal();
                let fid = mesh.element_faces[k][lf as usize];
                let len = mesh.faces[fid].length;
                debug_assert!(match mesh.faces[fid].kind {
                    FaceKind::Interior { k2, .. } => mesh.faces[fid].k1 == k || k2 == k,
                    FaceKind::Boundary { .. } => mesh.faces[fid].k1 == k,
                });
                q.iter()
                    .map(|(s, w)| {
                        let r = lf.reference_point(s[0]);
                        let (_, g) = field.value_grad(k, r[0], r[1]);
                        let gn = g[0] * n[0] + g[1] * n[1];
                        w * len * gn * gn
                    })
                    .sum::<f64>()
            })
            .sum::<f64>()
            * e.diameter
    });
    (coercivity_norm(field, exec).powi(2) + extra).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::field::Unknown;
    use crate::mesh::Mesh;
    use std::sync::Arc;

    #[test]
    fn zero_field() {
        let m = Arc::new(Mesh::unit_square(3).unwrap());
        let z = DgField::zeros(m, Unknown::Pressure);
        assert_eq!(coercivity_norm(&z, Execution::Parallel), 0.0);
        assert_eq!(star_norm(&z, Execution::Sequential), 0.0);
    }

    #[test]
    fn continuous_linear_field() {
        let m = Arc::new(Mesh::unit_square(2).unwrap());
        let w = DgField::interpolate(m, Unknown::Pressure, |x, _| x);
        assert!((gradient_norm(&w, Execution::Sequential) - 1.0).abs() < 1e-14);
        assert!(jump_seminorm(&w, Execution::Sequential) < 1e-15);
        assert!((coercivity_norm(&w, Execution::Parallel) - 1.0).abs() < 1e-14);
        assert!(star_norm(&w, Execution::Parallel) >= coercivity_norm(&w, Execution::Parallel));
    }

    #[test]
    fn single_unit_jump() {
        // Piecewise constant: 1 on the first cell of a 3x3 mesh of [0, 0.75]^2.
        // Two interior faces of length 0.25 see a unit jump:
        // h_e^{-1} * h_e * 1 per face.
        let m = Arc::new(Mesh::uniform(3, 3, crate::mesh::Rect::new(0.0, 0.0, 0.75, 0.75).unwrap()).unwrap());
        let mut c = vec![0.0; m.n_dofs()];
        c[..4].fill(1.0);
        let w = DgField::from_coeffs(m, Unknown::Aqueous, c);
        assert_eq!(gradient_norm(&w, Execution::Sequential), 0.0);
        let expected: f64 = 2.0;
        assert!((coercivity_norm(&w, Execution::Sequential) - expected.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn star_norm_single_cell() {
        // w = x on one unit cell: |grad w . n| = 1 on left and right faces,
        // extra term = h_K * (1 + 1) with h_K = sqrt(2).
        let m = Arc::new(Mesh::unit_square(1).unwrap());
        let w = DgField::interpolate(m, Unknown::Pressure, |x, _| x);
        let expected = (1.0 + 2.0 * 2f64.sqrt()).sqrt();
        assert!((star_norm(&w, Execution::Sequential) - expected).abs() < 1e-14);
    }
}

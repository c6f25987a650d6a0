//! Strong Dirichlet constraints on the nodal degrees of freedom of boundary
//! faces.

use std::collections::BTreeMap;

use super::sparse::CsrMatrix;
use crate::dg::Unknown;
use crate::error::{Error, Result};
use crate::mesh::Mesh;
use crate::physics::BoundaryConditions;

/// Prescribed values by degree of freedom.
pub type Constraints = BTreeMap<usize, f64>;

/// Nodal constraints of `unknown` on its Dirichlet sides, with values `g(x, y)`.
/// A node shared by two Dirichlet faces must receive the same value from both.
pub fn dirichlet_constraints(
    mesh: &Mesh,
    boundary: &BoundaryConditions,
    unknown: Unknown,
    g: impl Fn(f64, f64) -> f64,
) -> Result<Constraints> {
    let mut out = Constraints::new();
    for face in mesh.boundary_faces() {
        let side = face.side().expect("boundary face");
        if !boundary.is_dirichlet(unknown, side) {
            continue;
        }
        let verts = mesh.elements[face.k1].vertices();
        for node in face.local1.nodes() {
            let dof = Mesh::dof(face.k1, node);
            let [x, y] = verts[node];
            let v = g(x, y);
            if let Some(&prev) = out.get(&dof) {
                if (prev - v).abs() > 1e-12 * (1.0 + prev.abs()) {
                    return Err(Error::ConflictingConstraint {
                        dof,
                        first: prev,
                        second: v,
                    });
                }
            } else {
                out.insert(dof, v);
            }
        }
    }
    Ok(out)
}

/// Replaces constrained rows with identity rows and moves the constrained
/// columns to the right-hand side. The sparsity pattern is kept.
pub fn apply_dirichlet(matrix: &mut CsrMatrix, rhs: &mut [f64], constraints: &Constraints) {
    if constraints.is_empty() {
        return;
    }
    let mut fixed = vec![None; matrix.nrows];
    for (&d, &v) in constraints {
        fixed[d] = Some(v);
    }
    for i in 0..matrix.nrows {
        let range = matrix.row_ptr[i]..matrix.row_ptr[i + 1];
        match fixed[i] {
            Some(v) => {
                for p in range {
                    matrix.values[p] = if matrix.col_idx[p] == i { 1.0 } else { 0.0 };
                }
                rhs[i] = v;
            }
            None => {
                for p in range {
                    if let Some(g) = fixed[matrix.col_idx[p]] {
                        rhs[i] -= matrix.values[p] * g;
                        matrix.values[p] = 0.0;
                    }
                }
            }
        }
    }
}

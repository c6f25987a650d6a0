//! Nodal Q1 shape functions.
//!
//! Local node `a + 2b` sits at reference vertex `(a, b)`; the shape function is
//! `N_ab(xi, eta) = l_a(xi) l_b(eta)` with `l_0(t) = 1 - t`, `l_1(t) = t`.

use crate::mesh::Element;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisValues {
    pub values: [f64; 4],
    /// Physical gradients.
    pub gradients: [[f64; 2]; 4],
}

/// Reference shape function values at `(xi, eta)`.
#[inline]
pub fn shape_values(xi: f64, eta: f64) -> [f64; 4] {
    let (lx, ly) = ([1.0 - xi, xi], [1.0 - eta, eta]);
    [lx[0] * ly[0], lx[1] * ly[0], lx[0] * ly[1], lx[1] * ly[1]]
}

/// Evaluates the four shape functions of `element` at a reference point.
#[inline]
pub fn eval_basis(element: &Element, xi: f64, eta: f64) -> BasisValues {
    let (lx, ly) = ([1.0 - xi, xi], [1.0 - eta, eta]);
    let (sx, sy) = (1.0 / element.dx, 1.0 / element.dy);
    let dl = [-1.0, 1.0];
    let mut values = [0.0; 4];
    let mut gradients = [[0.0; 2]; 4];
    for b in 0..2 {
        for a in 0..2 {
            let n = a + 2 * b;
            values[n] = lx[a] * ly[b];
            gradients[n] = [dl[a] * ly[b] * sx, lx[a] * dl[b] * sy];
        }
    }
    BasisValues { values, gradients }
}

//! Sparse linear solves: a direct LU factorization with residual-driven
//! refinement, and a BiCGSTAB fallback.

use faer::prelude::*;
use faer::sparse::{SparseColMat, Triplet};

use crate::assembly::CsrMatrix;
use crate::error::{Error, Result};

/// Relative residual tolerance of every solve.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LinearSolver {
    /// Sparse LU, falling back to BiCGSTAB when the factorization fails.
    #[default]
    Direct,
    BiCgStab { max_iterations: usize },
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn residual(a: &CsrMatrix, x: &[f64], b: &[f64]) -> Vec<f64> {
    a.mul_vec(x).iter().zip(b).map(|(ax, bi)| bi - ax).collect()
}

/// Solves `A x = b` to `||b - A x|| <= tol (1 + ||b||)`.
pub fn solve_linear(a: &CsrMatrix, b: &[f64], tol: f64, method: LinearSolver) -> Result<Vec<f64>> {
    assert_eq!(a.nrows, a.ncols, "square system expected");
    assert_eq!(a.nrows, b.len());
    let target = tol * (1.0 + norm(b));
    match method {
        LinearSolver::Direct => match direct(a, b, target) {
            Ok(x) => Ok(x),
            Err(Error::SingularSystem(msg)) => {
                bicgstab(a, b, target, None, 20 * a.nrows.max(100)).map_err(|_| Error::SingularSystem(msg))
            }
            Err(e) => Err(e),
        },
        LinearSolver::BiCgStab { max_iterations } => bicgstab(a, b, target, None, max_iterations),
    }
}

fn direct(a: &CsrMatrix, b: &[f64], target: f64) -> Result<Vec<f64>> {
    let n = a.nrows;
    let triplets: Vec<_> = (0..n)
        .flat_map(|i| a.row(i).map(move |(j, v)| Triplet::new(i, j, v)))
        .collect();
    let m = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &triplets)
        .map_err(|e| Error::SingularSystem(format!("matrix construction failed: {e:?}")))?;
    let lu = m
        .sp_lu()
        .map_err(|e| Error::SingularSystem(format!("factorization failed: {e:?}")))?;
    let solve = |rhs: &[f64]| -> Vec<f64> {
        let col = Col::<f64>::from_fn(n, |i| rhs[i]);
        let x = lu.solve(&col);
        (0..n).map(|i| x[i]).collect()
    };
    let mut x = solve(b);
    // A few steps of iterative refinement with the same factors.
    for _ in 0..4 {
        if !x.iter().all(|v| v.is_finite()) {
            return Err(Error::SingularSystem("non-finite solution".into()));
        }
        let r = residual(a, &x, b);
        let rn = norm(&r);
        if rn <= target {
            return Ok(x);
        }
        let dx = solve(&r);
        for (xi, d) in x.iter_mut().zip(&dx) {
            *xi += d;
        }
    }
    let rn = norm(&residual(a, &x, b));
    if rn <= target {
        Ok(x)
    } else {
        Err(Error::SingularSystem(format!("residual {rn:e} after refinement")))
    }
}

/// Unpreconditioned BiCGSTAB from `x0` (zero by default).
fn bicgstab(a: &CsrMatrix, b: &[f64], target: f64, x0: Option<Vec<f64>>, max_iterations: usize) -> Result<Vec<f64>> {
    let n = b.len();
    let mut x = x0.unwrap_or_else(|| vec![0.0; n]);
    let mut r = residual(a, &x, b);
    let r_hat = r.clone();
    let (mut rho, mut alpha, mut omega) = (1.0, 1.0, 1.0);
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for it in 0..max_iterations {
        let rn = norm(&r);
        if rn <= target {
            return Ok(x);
        }
        let rho_new = dot(&r_hat, &r);
        if rho_new == 0.0 || omega == 0.0 {
            return Err(Error::NonConvergence {
                iterations: it,
                residual: rn,
            });
        }
        let beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        for i in 0..n {
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        v = a.mul_vec(&p);
        alpha = rho / dot(&r_hat, &v);
        let s: Vec<f64> = r.iter().zip(&v).map(|(ri, vi)| ri - alpha * vi).collect();
        if norm(&s) <= target {
            for i in 0..n {
                x[i] += alpha * p[i];
            }
            return Ok(x);
        }
        let t = a.mul_vec(&s);
        omega = dot(&t, &s) / dot(&t, &t);
        for i in 0..n {
            x[i] += alpha * p[i] + omega * s[i];
            r[i] = s[i] - omega * t[i];
        }
        if !omega.is_finite() || !alpha.is_finite() {
            return Err(Error::NonConvergence {
                iterations: it,
                residual: norm(&r),
            });
        }
    }
    let rn = norm(&residual(a, &x, b));
    if rn <= target {
        Ok(x)
    } else {
        Err(Error::NonConvergence {
            iterations: max_iterations,
            residual: rn,
        })
    }
}

//! Row-compressed matrices with the DG block pattern.
//!
//! Element `k` couples to itself and to its face neighbours, so the row block
//! of `k` holds dense 4x4 blocks for each coupled element, in ascending
//! element order.

use crate::mesh::Mesh;

#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub row_ptr: Vec<usize>,
    pub col_idx: Vec<usize>,
    pub values: Vec<f64>,
}

impl CsrMatrix {
    /// Builds a matrix from `(row, col, value)` triplets, summing duplicates in
    /// input order.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: &[(usize, usize, f64)]) -> Self {
        let mut sorted: Vec<_> = triplets.to_vec();
        sorted.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0; nrows + 1];
        let mut col_idx = Vec::with_capacity(sorted.len());
        let mut values: Vec<f64> = Vec::with_capacity(sorted.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in sorted {
            assert!(r < nrows && c < ncols, "triplet ({r}, {c}) out of bounds");
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                col_idx.push(c);
                values.push(v);
                row_ptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for i in 0..nrows {
            row_ptr[i + 1] += row_ptr[i];
        }
        CsrMatrix {
            nrows,
            ncols,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn identity(n: usize) -> Self {
        CsrMatrix {
            nrows: n,
            ncols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[r.clone()].iter().copied().zip(self.values[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.row(i).filter(|&(c, _)| c == j).map(|(_, v)| v).sum()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.ncols);
        (0..self.nrows)
            .map(|i| self.row(i).map(|(j, v)| v * x[j]).sum())
            .collect()
    }

    /// `x^T A y`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        self.mul_vec(y).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Largest `|a_ij - a_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.nrows {
            for (j, v) in self.row(i) {
                worst = worst.max((v - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// `self + scale * other` for matrices sharing one pattern.
    pub fn add_scaled(&self, scale: f64, other: &CsrMatrix) -> CsrMatrix {
        assert_eq!(self.row_ptr, other.row_ptr);
        assert_eq!(self.col_idx, other.col_idx);
        CsrMatrix {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + scale * b).collect(),
            ..self.clone()
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.ncols]; self.nrows];
        for (i, row) in d.iter_mut().enumerate() {
            for (j, v) in self.row(i) {
                row[j] += v;
            }
        }
        d
    }
}

/// Accumulates dense element/face blocks into the DG block pattern.
#[derive(Debug, Clone)]
pub(crate) struct BlockAssembler {
    /// Coupled elements per element, ascending.
    neighbours: Vec<Vec<usize>>,
    matrix: CsrMatrix,
}

impl BlockAssembler {
    pub(crate) fn new(mesh: &Mesh) -> Self {
        let ne = mesh.n_elements();
        let mut neighbours: Vec<Vec<usize>> = (0..ne).map(|k| vec![k]).collect();
        for f in mesh.interior_faces() {
            let k2 = f.k2().expect("interior face");
            neighbours[f.k1].push(k2);
            neighbours[k2].push(f.k1);
        }
        for nb in &mut neighbours {
            nb.sort_unstable();
            nb.dedup();
        }
        let n = 4 * ne;
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut col_idx = Vec::new();
        row_ptr.push(0);
        for nb in &neighbours {
            for _ in 0..4 {
                for &m in nb {
                    col_idx.extend(4 * m..4 * m + 4);
                }
                row_ptr.push(col_idx.len());
            }
        }
        let nnz = col_idx.len();
        BlockAssembler {
            neighbours,
            matrix: CsrMatrix {
                nrows: n,
                ncols: n,
                row_ptr,
                col_idx,
                values: vec![0.0; nnz],
            },
        }
    }

    /// Adds `block[i][j]` to entry `(4 row_el + i, 4 col_el + j)`.
    pub(crate) fn add_block(&mut self, row_el: usize, col_el: usize, block: &[[f64; 4]; 4]) {
        let pos = self.neighbours[row_el]
            .binary_search(&col_el)
            .expect("block outside the DG coupling pattern");
        for (i, brow) in block.iter().enumerate() {
            let start = self.matrix.row_ptr[4 * row_el + i] + 4 * pos;
            for (j, v) in brow.iter().enumerate() {
                self.matrix.values[start + j] += v;
            }
        }
    }

    pub(crate) fn finish(self) -> CsrMatrix {
        self.matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_sum_duplicates() {
        let a = CsrMatrix::from_triplets(2, 2, &[(0, 0, 1.0), (1, 1, 2.0), (0, 0, 3.0), (0, 1, -1.0)]);
        assert_eq!(a.to_dense(), vec![vec![4.0, -1.0], vec![0.0, 2.0]]);
        assert_eq!(a.mul_vec(&[1.0, 1.0]), vec![3.0, 2.0]);
        assert_eq!(a.asymmetry(), 1.0);
    }

    #[test]
    fn block_pattern() {
        let m = Mesh::unit_square(3).unwrap();
        let mut b = BlockAssembler::new(&m);
        let blk = [[1.0; 4]; 4];
        b.add_block(4, 1, &blk);
        b.add_block(4, 4, &blk);
        let a = b.finish();
        // Centre cell couples to itself and four neighbours.
        assert_eq!(a.row(16).count(), 20);
        // Corner cell couples to itself and two neighbours.
        assert_eq!(a.row(0).count(), 12);
        assert_eq!(a.get(17, 6), 1.0);
        assert_eq!(a.get(17, 18), 1.0);
        assert_eq!(a.get(17, 0), 0.0);
    }
}

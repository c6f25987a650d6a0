//! Gauss–Legendre rules on `[0, 1]` and their tensor products on `[0, 1]^2`.

/// Quadrature rule on a reference domain. For cell rules the points are
/// `[xi, eta]`; for face rules only the first coordinate is used.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub points: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
    /// Total polynomial degree integrated exactly.
    pub degree: usize,
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
fn gauss_1d(n: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w): (&[f64], &[f64]) = match n {
        1 => (&[0.0], &[2.0]),
        2 => {
            let a = 1.0 / 3f64.sqrt();
            return map_unit(&[-a, a], &[1.0, 1.0]);
        }
        3 => {
            let a = (3.0f64 / 5.0).sqrt();
            return map_unit(&[-a, 0.0, a], &[5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0]);
        }
        4 => {
            let s = (6.0f64 / 5.0).sqrt();
            let a = ((3.0 - 2.0 * s) / 7.0).sqrt();
            let b = ((3.0 + 2.0 * s) / 7.0).sqrt();
            let wa = (18.0 + 30f64.sqrt()) / 36.0;
            let wb = (18.0 - 30f64.sqrt()) / 36.0;
            return map_unit(&[-b, -a, a, b], &[wb, wa, wa, wb]);
        }
        5 => {
            let r = 2.0 * (10.0f64 / 7.0).sqrt();
            let a = (5.0 - r).sqrt() / 3.0;
            let b = (5.0 + r).sqrt() / 3.0;
            let w0 = 128.0 / 225.0;
            let wa = (322.0 + 13.0 * 70f64.sqrt()) / 900.0;
            let wb = (322.0 - 13.0 * 70f64.sqrt()) / 900.0;
            return map_unit(&[-b, -a, 0.0, a, b], &[wb, wa, w0, wa, wb]);
        }
        _ => panic!("Gauss rule with {n} points is not tabulated"),
    };
    map_unit(x, w)
}

fn map_unit(x: &[f64], w: &[f64]) -> (Vec<f64>, Vec<f64>) {
    (
        x.iter().map(|x| 0.5 * (x + 1.0)).collect(),
        w.iter().map(|w| 0.5 * w).collect(),
    )
}

impl QuadratureRule {
    /// `n`-point Gauss rule on `[0, 1]`, exact to degree `2n - 1`.
    pub fn gauss_line(n: usize) -> Self {
        let (x, w) = gauss_1d(n);
        QuadratureRule {
            points: x.into_iter().map(|s| [s, 0.0]).collect(),
            weights: w,
            degree: 2 * n - 1,
        }
    }

    /// `n x n` tensor Gauss rule on `[0, 1]^2`.
    pub fn gauss_square(n: usize) -> Self {
        let (x, w) = gauss_1d(n);
        let mut points = Vec::with_capacity(n * n);
        let mut weights = Vec::with_capacity(n * n);
        for (&eta, &wy) in x.iter().zip(&w) {
            for (&xi, &wx) in x.iter().zip(&w) {
                points.push([xi, eta]);
                weights.push(wx * wy);
            }
        }
        QuadratureRule {
            points,
            weights,
            degree: 2 * n - 1,
        }
    }

    /// Default cell rule: 3 x 3 Gauss points.
    pub fn cell() -> Self {
        Self::gauss_square(3)
    }

    /// Default face rule: 3 Gauss points.
    pub fn face() -> Self {
        Self::gauss_line(3)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ([f64; 2], f64)> + '_ {
        self.points.iter().copied().zip(self.weights.iter().copied())
    }
}

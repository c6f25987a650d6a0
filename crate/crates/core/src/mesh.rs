//! Structured quadrilateral meshes of an axis-aligned rectangle.
//!
//! Elements are numbered row-major (`k = j * nx + i`). Interior vertical faces
//! carry the normal `+x` (from the left cell into the right cell), interior
//! horizontal faces carry `+y` (from the lower cell into the upper cell).
//! Boundary faces carry the outward normal.

use crate::error::{Error, Result};

/// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub const UNIT: Rect = Rect {
        x0: 0.0,
        y0: 0.0,
        x1: 1.0,
        y1: 1.0,
    };

    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        if !(x1 > x0) || !(y1 > y0) {
            return Err(Error::InvalidDomain { x0, y0, x1, y1 });
        }
        Ok(Rect { x0, y0, x1, y1 })
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }
}

/// Side of the rectangular domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Left, Side::Right, Side::Bottom, Side::Top];
}

/// Local face slot of a quadrilateral cell. The slot index is also the
/// position in [`Mesh::element_faces`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalFace {
    Left = 0,
    Right = 1,
    Bottom = 2,
    Top = 3,
}

impl LocalFace {
    pub const ALL: [LocalFace; 4] = [
        LocalFace::Left,
        LocalFace::Right,
        LocalFace::Bottom,
        LocalFace::Top,
    ];

    /// Reference coordinates of the point at arc parameter `s` in `[0, 1]`.
    /// The parameter runs along `+y` on vertical faces and `+x` on horizontal ones.
    #[inline]
    pub fn reference_point(self, s: f64) -> [f64; 2] {
        match self {
            LocalFace::Left => [0.0, s],
            LocalFace::Right => [1.0, s],
            LocalFace::Bottom => [s, 0.0],
            LocalFace::Top => [s, 1.0],
        }
    }

    /// Outward unit normal of the cell on this face.
    pub fn outward_normal(self) -> [f64; 2] {
        match self {
            LocalFace::Left => [-1.0, 0.0],
            LocalFace::Right => [1.0, 0.0],
            LocalFace::Bottom => [0.0, -1.0],
            LocalFace::Top => [0.0, 1.0],
        }
    }

    /// Local Q1 nodes lying on this face (tensor numbering `a + 2b`).
    pub fn nodes(self) -> [usize; 2] {
        match self {
            LocalFace::Left => [0, 2],
            LocalFace::Right => [1, 3],
            LocalFace::Bottom => [0, 1],
            LocalFace::Top => [2, 3],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    /// Lower-left corner.
    pub origin: [f64; 2],
    pub dx: f64,
    pub dy: f64,
    /// Cell diagonal.
    pub diameter: f64,
}

impl Element {
    pub fn area(&self) -> f64 {
        self.dx * self.dy
    }

    /// Maps reference coordinates in `[0, 1]^2` to physical coordinates.
    #[inline]
    pub fn map(&self, xi: f64, eta: f64) -> [f64; 2] {
        [self.origin[0] + xi * self.dx, self.origin[1] + eta * self.dy]
    }

    /// Physical coordinates of the four vertices in tensor order.
    pub fn vertices(&self) -> [[f64; 2]; 4] {
        [
            self.map(0.0, 0.0),
            self.map(1.0, 0.0),
            self.map(0.0, 1.0),
            self.map(1.0, 1.0),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FaceKind {
    Interior { k2: usize, local2: LocalFace },
    Boundary { side: Side },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    pub id: usize,
    /// The element the normal points away from.
    pub k1: usize,
    pub local1: LocalFace,
    pub kind: FaceKind,
    pub normal: [f64; 2],
    pub length: f64,
    pub midpoint: [f64; 2],
    /// Endpoints ordered so that the arc parameter runs from `a` to `b`.
    pub a: [f64; 2],
    pub b: [f64; 2],
}

impl Face {
    pub fn is_interior(&self) -> bool {
        matches!(self.kind, FaceKind::Interior { .. })
    }

    pub fn k2(&self) -> Option<usize> {
        match self.kind {
            FaceKind::Interior { k2, .. } => Some(k2),
            FaceKind::Boundary { .. } => None,
        }
    }

    pub fn side(&self) -> Option<Side> {
        match self.kind {
            FaceKind::Boundary { side } => Some(side),
            FaceKind::Interior { .. } => None,
        }
    }

    /// Physical point at arc parameter `s`.
    #[inline]
    pub fn point(&self, s: f64) -> [f64; 2] {
        [
            self.a[0] + s * (self.b[0] - self.a[0]),
            self.a[1] + s * (self.b[1] - self.a[1]),
        ]
    }

    /// `+1` if the stored normal is the outward normal of `k`, `-1` otherwise.
    pub fn orientation(&self, k: usize) -> f64 {
        if k == self.k1 {
            1.0
        } else {
            -1.0
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub nx: usize,
    pub ny: usize,
    pub domain: Rect,
    pub elements: Vec<Element>,
    pub faces: Vec<Face>,
    /// Face ids per element, indexed by [`LocalFace`].
    pub element_faces: Vec<[usize; 4]>,
}

impl Mesh {
    /// Builds the uniform `nx x ny` mesh of `domain`.
    pub fn uniform(nx: usize, ny: usize, domain: Rect) -> Result<Mesh> {
        Rect::new(domain.x0, domain.y0, domain.x1, domain.y1)?;
        if nx == 0 || ny == 0 {
            return Err(Error::InvalidResolution { nx, ny });
        }
        let dx = domain.width() / nx as f64;
        let dy = domain.height() / ny as f64;
        // Coordinates are computed from lattice indices rather than accumulated
        // so that refinement reproduces the domain corners exactly.
        let xs: Vec<f64> = (0..=nx)
            .map(|i| {
                if i == nx {
                    domain.x1
                } else {
                    domain.x0 + i as f64 * dx
                }
            })
            .collect();
        let ys: Vec<f64> = (0..=ny)
            .map(|j| {
                if j == ny {
                    domain.y1
                } else {
                    domain.y0 + j as f64 * dy
                }
            })
            .collect();

        let elements = (0..ny)
            .flat_map(|j| (0..nx).map(move |i| (i, j)))
            .map(|(i, j)| {
                let (ex, ey) = (xs[i + 1] - xs[i], ys[j + 1] - ys[j]);
                Element {
                    origin: [xs[i], ys[j]],
                    dx: ex,
                    dy: ey,
                    diameter: ex.hypot(ey),
                }
            })
            .collect::<Vec<_>>();

        let mut faces = Vec::with_capacity(2 * nx * ny + nx + ny);
        let mut element_faces = vec![[usize::MAX; 4]; nx * ny];
        let idx = |i: usize, j: usize| j * nx + i;

        // Vertical faces, x = xs[i].
        for j in 0..ny {
            for i in 0..=nx {
                let id = faces.len();
                let a = [xs[i], ys[j]];
                let b = [xs[i], ys[j + 1]];
                let (k1, local1, kind, normal) = if i == 0 {
                    (idx(0, j), LocalFace::Left, FaceKind::Boundary { side: Side::Left }, [-1.0, 0.0])
                } else if i == nx {
                    (
                        idx(nx - 1, j),
                        LocalFace::Right,
                        FaceKind::Boundary { side: Side::Right },
                        [1.0, 0.0],
                    )
                } else {
                    let k2 = idx(i, j);
                    element_faces[k2][LocalFace::Left as usize] = id;
                    (
                        idx(i - 1, j),
                        LocalFace::Right,
                        FaceKind::Interior {
                            k2,
                            local2: LocalFace::Left,
                        },
                        [1.0, 0.0],
                    )
                };
                element_faces[k1][local1 as usize] = id;
                faces.push(Face {
                    id,
                    k1,
                    local1,
                    kind,
                    normal,
                    length: b[1] - a[1],
                    midpoint: [a[0], 0.5 * (a[1] + b[1])],
                    a,
                    b,
                });
            }
        }
        // Horizontal faces, y = ys[j].
        for j in 0..=ny {
            for i in 0..nx {
                let id = faces.len();
                let a = [xs[i], ys[j]];
                let b = [xs[i + 1], ys[j]];
                let (k1, local1, kind, normal) = if j == 0 {
                    (
                        idx(i, 0),
                        LocalFace::Bottom,
                        FaceKind::Boundary { side: Side::Bottom },
                        [0.0, -1.0],
                    )
                } else if j == ny {
                    (idx(i, ny - 1), LocalFace::Top, FaceKind::Boundary { side: Side::Top }, [0.0, 1.0])
                } else {
                    let k2 = idx(i, j);
                    element_faces[k2][LocalFace::Bottom as usize] = id;
                    (
                        idx(i, j - 1),
                        LocalFace::Top,
                        FaceKind::Interior {
                            k2,
                            local2: LocalFace::Bottom,
                        },
                        [0.0, 1.0],
                    )
                };
                element_faces[k1][local1 as usize] = id;
                faces.push(Face {
                    id,
                    k1,
                    local1,
                    kind,
                    normal,
                    length: b[0] - a[0],
                    midpoint: [0.5 * (a[0] + b[0]), a[1]],
                    a,
                    b,
                });
            }
        }

        Ok(Mesh {
            nx,
            ny,
            domain,
            elements,
            faces,
            element_faces,
        })
    }

    /// Uniform mesh of the unit square with `n x n` cells.
    pub fn unit_square(n: usize) -> Result<Mesh> {
        Mesh::uniform(n, n, Rect::UNIT)
    }

    /// Doubles the resolution in both directions.
    pub fn refine(&self) -> Mesh {
        Mesh::uniform(2 * self.nx, 2 * self.ny, self.domain).expect("refining a valid mesh")
    }

    pub fn n_elements(&self) -> usize {
        self.elements.len()
    }

    /// Number of Q1 DG degrees of freedom per scalar unknown.
    pub fn n_dofs(&self) -> usize {
        4 * self.elements.len()
    }

    /// Largest element diameter (cell diagonal).
    pub fn h(&self) -> f64 {
        self.elements.iter().map(|e| e.diameter).fold(0.0, f64::max)
    }

    /// Largest cell edge length. This is the mesh size used by the refinement
    /// ladders (0.5, 0.25, ... on the unit square).
    pub fn cell_size(&self) -> f64 {
        self.elements
            .iter()
            .map(|e| e.dx.max(e.dy))
            .fold(0.0, f64::max)
    }

    pub fn interior_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| f.is_interior())
    }

    pub fn boundary_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| !f.is_interior())
    }

    /// Global index of local node `node` of element `k`.
    #[inline]
    pub fn dof(k: usize, node: usize) -> usize {
        4 * k + node
    }
}

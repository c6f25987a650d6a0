//! Closure laws, fluid data and manufactured solutions.

mod closures;
mod manufactured;

pub use closures::{
    capillary_pressure_a, capillary_pressure_v, clamp, mobilities, mobility_partials,
    relative_permeabilities, CapillaryA, CapillaryV, Mobilities, SaturationPair, EPS_SATURATION,
    PCA_COEFF, PCV_COEFF,
};
pub use manufactured::{phase_sources, Case, ConstantCase, ExactState, Jet, ManufacturedCase};

use crate::dg::Unknown;
use crate::mesh::Side;

/// Values attached to the three phases.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Phases {
    pub liquid: f64,
    pub vapor: f64,
    pub aqueous: f64,
}

impl Phases {
    pub fn new(liquid: f64, vapor: f64, aqueous: f64) -> Self {
        Phases {
            liquid,
            vapor,
            aqueous,
        }
    }

    pub fn total(&self) -> f64 {
        self.liquid + self.vapor + self.aqueous
    }

    pub fn dot(&self, other: &Phases) -> f64 {
        self.liquid * other.liquid + self.vapor * other.vapor + self.aqueous * other.aqueous
    }
}

/// Absolute permeability, piecewise constant per element.
#[derive(Debug, Clone, PartialEq)]
pub enum Permeability {
    Uniform(f64),
    PerElement(Vec<f64>),
}

impl Permeability {
    #[inline]
    pub fn at(&self, k: usize) -> f64 {
        match self {
            Permeability::Uniform(v) => *v,
            Permeability::PerElement(v) => v[k],
        }
    }

    pub fn bounds(&self) -> (f64, f64) {
        match self {
            Permeability::Uniform(v) => (*v, *v),
            Permeability::PerElement(v) => v
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x))),
        }
    }
}

/// Incompressible fluid and rock data.
#[derive(Debug, Clone, PartialEq)]
pub struct FluidProperties {
    pub viscosity: Phases,
    pub density: Phases,
    pub porosity: f64,
    pub permeability: Permeability,
    pub gravity: [f64; 2],
}

impl FluidProperties {
    /// Data of the constant-density verification study (no gravity).
    pub fn verification() -> Self {
        FluidProperties {
            viscosity: Phases::new(0.75, 0.25, 0.5),
            density: Phases::new(3.0, 1.0, 5.0),
            porosity: 0.2,
            permeability: Permeability::Uniform(1.0),
            gravity: [0.0, 0.0],
        }
    }

    pub fn with_gravity(mut self, g: [f64; 2]) -> Self {
        self.gravity = g;
        self
    }

    pub fn validate(&self) -> crate::Result<()> {
        let v = &self.viscosity;
        if !(v.liquid > 0.0 && v.vapor > 0.0 && v.aqueous > 0.0) {
            return Err(crate::Error::Config("viscosities must be positive".into()));
        }
        if !(self.porosity > 0.0 && self.porosity <= 1.0) {
            return Err(crate::Error::Config("porosity must lie in (0, 1]".into()));
        }
        if !(self.permeability.bounds().0 > 0.0) {
            return Err(crate::Error::Config("permeability must be positive".into()));
        }
        Ok(())
    }
}

/// Per-unknown Dirichlet sides; the remaining sides are Neumann.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryConditions {
    dirichlet: [[bool; 4]; 3],
}

impl Default for BoundaryConditions {
    fn default() -> Self {
        Self::all_dirichlet()
    }
}

impl BoundaryConditions {
    pub fn all_dirichlet() -> Self {
        BoundaryConditions {
            dirichlet: [[true; 4]; 3],
        }
    }

    pub fn set(&mut self, unknown: Unknown, side: Side, dirichlet: bool) -> &mut Self {
        self.dirichlet[unknown.index()][side as usize] = dirichlet;
        self
    }

    pub fn is_dirichlet(&self, unknown: Unknown, side: Side) -> bool {
        self.dirichlet[unknown.index()][side as usize]
    }
}

//! Discrete forms, load vectors and boundary constraints of the sequential
//! scheme: the pressure system, the RT0 velocity projection and the two
//! saturation systems.

mod coefficients;
pub mod coercivity;
mod dirichlet;
mod form;
mod pressure;
mod rt0;
mod saturation;
mod sparse;

pub use coefficients::{Coefficients, FrozenCoefficients, LaggedCoefficients, PointCoefficients};
pub use dirichlet::{apply_dirichlet, dirichlet_constraints, Constraints};
pub use form::{diffusion_form, face_averages, mass_matrix, DiffusionForm, FaceAverage};
pub use pressure::{assemble_pressure, pressure_load};
pub use rt0::{rt0_project, RtField};
pub use saturation::{assemble_saturation, upwind_choices, upwind_first, upwind_value, SaturationInputs};
pub use sparse::CsrMatrix;

use crate::dg::Unknown;
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::physics::EPS_SATURATION;

/// Symmetrization parameter of the interior-penalty form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Theta {
    /// `theta = -1`, symmetric interior penalty.
    Symmetric,
    /// `theta = 0`, incomplete interior penalty.
    Incomplete,
    /// `theta = 1`, non-symmetric interior penalty.
    #[default]
    NonSymmetric,
}

impl Theta {
    pub const ALL: [Theta; 3] = [Theta::Symmetric, Theta::Incomplete, Theta::NonSymmetric];

    pub fn value(self) -> f64 {
        match self {
            Theta::Symmetric => -1.0,
            Theta::Incomplete => 0.0,
            Theta::NonSymmetric => 1.0,
        }
    }

    pub fn from_value(v: f64) -> Result<Self> {
        match v {
            v if v == -1.0 => Ok(Theta::Symmetric),
            v if v == 0.0 => Ok(Theta::Incomplete),
            v if v == 1.0 => Ok(Theta::NonSymmetric),
            _ => Err(Error::Config(format!("theta must be -1, 0 or 1, got {v}"))),
        }
    }
}

/// Symmetrization and penalty of one equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteriorPenalty {
    pub theta: Theta,
    pub alpha: f64,
}

impl InteriorPenalty {
    pub fn new(theta: Theta, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::Config(format!("penalty must be positive, got {alpha}")));
        }
        Ok(InteriorPenalty { theta, alpha })
    }
}

impl Default for InteriorPenalty {
    fn default() -> Self {
        InteriorPenalty {
            theta: Theta::NonSymmetric,
            alpha: 1.0,
        }
    }
}

/// State the vapor coefficients are evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VaporCoefficientState {
    /// `(S_a^n, S_v^n)`.
    #[default]
    Lagged,
    /// `(S_a^{n+1}, S_v^n)`.
    FreshAqueous,
}

/// Discretization parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    pub pressure: InteriorPenalty,
    pub aqueous: InteriorPenalty,
    pub vapor: InteriorPenalty,
    pub vapor_coefficients: VaporCoefficientState,
    /// Saturation cutoff used before coefficient evaluation.
    pub eps: f64,
    pub execution: Execution,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        SchemeConfig {
            pressure: InteriorPenalty::default(),
            aqueous: InteriorPenalty::default(),
            vapor: InteriorPenalty::default(),
            vapor_coefficients: VaporCoefficientState::Lagged,
            eps: EPS_SATURATION,
            execution: Execution::default(),
        }
    }
}

impl SchemeConfig {
    pub fn penalty(&self, unknown: Unknown) -> InteriorPenalty {
        match unknown {
            Unknown::Pressure => self.pressure,
            Unknown::Aqueous => self.aqueous,
            Unknown::Vapor => self.vapor,
        }
    }

    pub fn with_penalty(mut self, unknown: Unknown, ip: InteriorPenalty) -> Self {
        match unknown {
            Unknown::Pressure => self.pressure = ip,
            Unknown::Aqueous => self.aqueous = ip,
            Unknown::Vapor => self.vapor = ip,
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        for u in Unknown::ALL {
            InteriorPenalty::new(self.penalty(u).theta, self.penalty(u).alpha)?;
        }
        if !(self.eps > 0.0 && self.eps < 0.5) {
            return Err(Error::Config(format!("saturation cutoff must lie in (0, 0.5), got {}", self.eps)));
        }
        Ok(())
    }
}

/// A constrained linear system ready for the solver.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub matrix: CsrMatrix,
    pub rhs: Vec<f64>,
    pub constraints: Constraints,
    /// Interior faces where the diffusivity vanished on both sides.
    pub degenerate_faces: usize,
}

/// Harmonic mean `2 a1 a2 / (a1 + a2)`.
pub fn harmonic_penalty(a1: f64, a2: f64) -> Result<f64> {
    let s = a1 + a2;
    if s == 0.0 {
        return Err(Error::DegenerateWeights(s));
    }
    Ok(2.0 * a1 * a2 / s)
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid domain: [{x0}, {x1}] x [{y0}, {y1}]")]
    InvalidDomain { x0: f64, y0: f64, x1: f64, y1: f64 },

    #[error("invalid mesh resolution {nx} x {ny}")]
    InvalidResolution { nx: usize, ny: usize },

    #[error("degenerate weights: A1 + A2 = {0}")]
    DegenerateWeights(f64),

    #[error("singular local mass matrix on element {0}")]
    SingularMassMatrix(usize),

    #[error("capillary pressure evaluated outside its domain (s = {0})")]
    CapillaryDomain(f64),

    #[error("non-positive {what} coefficient trace {value} on face {face}")]
    NonPositiveCoefficient {
        what: &'static str,
        face: usize,
        value: f64,
    },

    #[error("conflicting Dirichlet values for dof {dof}: {first} vs {second}")]
    ConflictingConstraint { dof: usize, first: f64, second: f64 },

    #[error("singular linear system ({0})")]
    SingularSystem(String),

    #[error("iterative solver did not converge: residual {residual:e} after {iterations} iterations")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("level {level} (h = {h}): {source}")]
    Level {
        level: usize,
        h: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by user input rather than numerical failure.
    pub fn is_config(&self) -> bool {
        match self {
            Error::Config(_) | Error::InvalidDomain { .. } | Error::InvalidResolution { .. } => {
                true
            }
            Error::Level { source, .. } | Error::Step { source, .. } => source.is_config(),
            _ => false,
        }
    }
}

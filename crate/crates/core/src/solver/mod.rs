//! The sequential-implicit time loop.
//!
//! Each step solves, with coefficients lagged at the previous level,
//! pressure, then projects the velocity onto RT0, then solves the aqueous
//! and the vapor saturation equations.

mod linear;

use std::sync::Arc;

pub use linear::{solve_linear, LinearSolver, DEFAULT_TOLERANCE};

use crate::assembly::coercivity::{check_coercivity_threshold, coefficient_bounds, mesh_trace_constant};
use crate::assembly::{
    assemble_pressure, assemble_saturation, rt0_project, LaggedCoefficients, LinearSystem, RtField,
    SaturationInputs, SchemeConfig, VaporCoefficientState,
};
use crate::dg::{coercivity_norm, l2_error, l2_project, DgField, Unknown};
use crate::error::{Error, Result};
use crate::mesh::Mesh;
use crate::physics::Case;

/// Discrete unknowns at time level `step`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseState {
    pub pressure: DgField,
    pub aqueous: DgField,
    pub vapor: DgField,
    pub step: usize,
    pub time: f64,
}

impl PhaseState {
    pub fn mesh(&self) -> &Arc<Mesh> {
        self.pressure.mesh()
    }

    pub fn field(&self, unknown: Unknown) -> &DgField {
        match unknown {
            Unknown::Pressure => &self.pressure,
            Unknown::Aqueous => &self.aqueous,
            Unknown::Vapor => &self.vapor,
        }
    }
}

/// Uniform time stepping with `steps * tau = final_time`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeConfig {
    pub tau: f64,
    pub final_time: f64,
    pub steps: usize,
}

impl TimeConfig {
    /// Requires `final_time` to be an integer multiple of `tau`.
    pub fn new(tau: f64, final_time: f64) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::Config(format!("time step must be positive, got {tau}")));
        }
        if !(final_time >= 0.0 && final_time.is_finite()) {
            return Err(Error::Config(format!("final time must be non-negative, got {final_time}")));
        }
        let steps = (final_time / tau).round() as usize;
        if (steps as f64 * tau - final_time).abs() > 1e-12 {
            return Err(Error::Config(format!(
                "final time {final_time} is not a multiple of the time step {tau}"
            )));
        }
        Ok(TimeConfig { tau, final_time, steps })
    }

    pub fn time(&self, n: usize) -> f64 {
        n as f64 * self.tau
    }
}

/// L2 projections of the exact fields at `t`.
pub fn initialize(case: &dyn Case, mesh: &Arc<Mesh>, t: f64, cfg: &SchemeConfig) -> Result<PhaseState> {
    let project = |u: Unknown| l2_project(mesh, u, |x, y| case.exact(u, t, x, y), cfg.execution);
    Ok(PhaseState {
        pressure: project(Unknown::Pressure)?,
        aqueous: project(Unknown::Aqueous)?,
        vapor: project(Unknown::Vapor)?,
        step: 0,
        time: t,
    })
}

/// What happened in one step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    pub time: f64,
    pub velocity: RtField,
    /// Nodal ranges of the new saturations.
    pub aqueous_range: (f64, f64),
    pub vapor_range: (f64, f64),
    /// Interior faces where the vapor diffusivity vanished.
    pub degenerate_vapor_faces: usize,
}

impl StepRecord {
    /// Whether the cutoff would modify any stored saturation.
    pub fn clamp_active(&self, eps: f64) -> bool {
        let inside = |(lo, hi): (f64, f64)| lo >= eps && hi <= 1.0 - eps;
        !(inside(self.aqueous_range) && inside(self.vapor_range))
    }
}

fn solve_system(sys: &LinearSystem, mesh: &Arc<Mesh>, unknown: Unknown) -> Result<DgField> {
    let x = solve_linear(&sys.matrix, &sys.rhs, DEFAULT_TOLERANCE, LinearSolver::Direct)?;
    let field = DgField::from_coeffs(mesh.clone(), unknown, x);
    if !field.is_finite() {
        return Err(Error::SingularSystem(format!("non-finite {} solution", unknown.label())));
    }
    Ok(field)
}

fn advance_inner(state: &PhaseState, tau: f64, cfg: &SchemeConfig, case: &dyn Case) -> Result<(PhaseState, StepRecord)> {
    let mesh = state.mesh().clone();
    let exec = cfg.execution;
    let t = state.time + tau;
    let fluids = case.fluids();
    let lagged = LaggedCoefficients {
        aqueous: &state.aqueous,
        vapor: &state.vapor,
        fluids,
        eps: cfg.eps,
    };

    let sys = assemble_pressure(&mesh, &lagged, case, t, cfg.pressure, exec)?;
    let pressure = solve_system(&sys, &mesh, Unknown::Pressure)?;
    let velocity = rt0_project(&pressure, &lagged, cfg.pressure, exec)?;

    let inputs = |unknown, previous| SaturationInputs {
        unknown,
        previous,
        velocity: &velocity,
        tau,
        time: t,
    };
    let sys = assemble_saturation(&mesh, &lagged, case, inputs(Unknown::Aqueous, &state.aqueous), cfg.aqueous, exec)?;
    let aqueous = solve_system(&sys, &mesh, Unknown::Aqueous)?;

    let fresh = LaggedCoefficients {
        aqueous: &aqueous,
        ..lagged
    };
    let vapor_coeffs = match cfg.vapor_coefficients {
        VaporCoefficientState::Lagged => &lagged,
        VaporCoefficientState::FreshAqueous => &fresh,
    };
    let sys = assemble_saturation(&mesh, vapor_coeffs, case, inputs(Unknown::Vapor, &state.vapor), cfg.vapor, exec)?;
    let vapor = solve_system(&sys, &mesh, Unknown::Vapor)?;

    let record = StepRecord {
        step: state.step + 1,
        time: t,
        velocity,
        aqueous_range: aqueous.coeff_range(),
        vapor_range: vapor.coeff_range(),
        degenerate_vapor_faces: sys.degenerate_faces,
    };
    let next = PhaseState {
        pressure,
        aqueous,
        vapor,
        step: state.step + 1,
        time: t,
    };
    Ok((next, record))
}

/// One sequential-implicit step from `state` to `state.time + tau`.
pub fn advance(state: &PhaseState, tau: f64, cfg: &SchemeConfig, case: &dyn Case) -> Result<(PhaseState, StepRecord)> {
    advance_inner(state, tau, cfg, case).map_err(|e| Error::Step {
        step: state.step + 1,
        source: Box::new(e),
    })
}

/// Final-time errors per unknown, ordered pressure / aqueous / vapor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub l2: [f64; 3],
    /// `|||U_h - Pi_h u|||` with `Pi_h` the L2 projection.
    pub coercivity: [f64; 3],
}

pub fn measure_errors(state: &PhaseState, case: &dyn Case, cfg: &SchemeConfig) -> Result<ErrorReport> {
    let mut l2 = [0.0; 3];
    let mut coercivity = [0.0; 3];
    let t = state.time;
    for u in Unknown::ALL {
        let f = state.field(u);
        l2[u.index()] = l2_error(f, |x, y| case.exact(u, t, x, y), cfg.execution);
        let proj = l2_project(state.mesh(), u, |x, y| case.exact(u, t, x, y), cfg.execution)?;
        coercivity[u.index()] = coercivity_norm(&f.sub(&proj), cfg.execution);
    }
    Ok(ErrorReport { l2, coercivity })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub state: PhaseState,
    pub errors: ErrorReport,
    /// Whether any stored saturation left `[eps, 1 - eps]` during the run.
    pub clamp_activated: bool,
    pub warnings: Vec<String>,
}

/// Advisory coercivity check from the saturation ranges of `state`.
pub fn coercivity_warnings(state: &PhaseState, case: &dyn Case, cfg: &SchemeConfig) -> Vec<String> {
    let fluids = case.fluids();
    let (sa, sv) = (state.aqueous.coeff_range(), state.vapor.coeff_range());
    let bounds = Unknown::ALL.map(|u| coefficient_bounds(u, fluids, sa, sv, cfg.eps, 21));
    let (klo, khi) = fluids.permeability.bounds();
    let kappa = crate::assembly::coercivity::Bounds { lower: klo, upper: khi };
    check_coercivity_threshold(cfg, bounds, kappa, mesh_trace_constant(state.mesh())).warnings
}

/// Runs from the projected initial data to `time.final_time`, calling
/// `observer` after every step with the states before and after it.
pub fn run_observed(
    case: &dyn Case,
    mesh: &Arc<Mesh>,
    time: TimeConfig,
    cfg: &SchemeConfig,
    observer: &mut dyn FnMut(&PhaseState, &PhaseState, &StepRecord),
) -> Result<RunOutput> {
    cfg.validate()?;
    case.fluids().validate()?;
    let mut state = initialize(case, mesh, 0.0, cfg)?;
    let mut warnings = coercivity_warnings(&state, case, cfg);
    let mut clamp_activated = false;
    let mut degenerate = 0;
    for n in 0..time.steps {
        let (mut next, record) = advance(&state, time.tau, cfg, case)?;
        // Accumulated rounding in `t + tau` is removed by resetting to n tau.
        next.time = time.time(n + 1);
        clamp_activated |= record.clamp_active(cfg.eps);
        degenerate += record.degenerate_vapor_faces;
        observer(&state, &next, &record);
        state = next;
    }
    if degenerate > 0 {
        warnings.push(format!(
            "vapor diffusivity vanished on {degenerate} face evaluations; the vapor equation is locally advection-dominated"
        ));
    }
    let errors = measure_errors(&state, case, cfg)?;
    Ok(RunOutput {
        state,
        errors,
        clamp_activated,
        warnings,
    })
}

pub fn run(case: &dyn Case, mesh: &Arc<Mesh>, time: TimeConfig, cfg: &SchemeConfig) -> Result<RunOutput> {
    run_observed(case, mesh, time, cfg, &mut |_, _, _| {})
}

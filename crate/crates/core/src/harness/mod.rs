//! Convergence studies over a mesh ladder and their reports.

mod config;
mod report;

use std::sync::Arc;

pub use config::{CaseName, ReportFormat, RunConfig, TauRule};
pub use report::{emit_report, ConvergenceReport, LevelResult};

use crate::error::{Error, Result};
use crate::mesh::Mesh;
use crate::par::Execution;
use crate::physics::{FluidProperties, ManufacturedCase};
use crate::solver::{run, TimeConfig};

/// The manufactured case selected by `config`.
pub fn build_case(config: &RunConfig) -> Result<ManufacturedCase> {
    let default_gravity = match config.case {
        CaseName::Gravity => [0.0, -0.1],
        CaseName::ConstantDensities | CaseName::Custom => [0.0, 0.0],
    };
    let g = config.gravity.unwrap_or(default_gravity);
    ManufacturedCase::new(FluidProperties::verification().with_gravity(g))
}

/// Runs one level of the ladder with cell size `h`.
pub fn run_level(config: &RunConfig, case: &ManufacturedCase, h: f64) -> Result<LevelResult> {
    let n = (1.0 / h).round() as usize;
    let mesh = Arc::new(Mesh::unit_square(n)?);
    let tau = config.tau_rule.tau(mesh.cell_size());
    let time = TimeConfig::new(tau, config.final_time)?;
    let out = run(case, &mesh, time, &config.scheme)?;
    Ok(LevelResult {
        h: mesh.cell_size(),
        dofs: mesh.n_dofs(),
        tau,
        steps: time.steps,
        l2: out.errors.l2,
        coercivity: out.errors.coercivity,
        clamp_activated: out.clamp_activated,
        warnings: out.warnings,
    })
}

/// Runs every ladder level and collects the final-time errors.
pub fn convergence_study(config: &RunConfig) -> Result<ConvergenceReport> {
    config.validate()?;
    let case = build_case(config)?;
    let ladder = config.ladder();
    let exec = if config.parallel_levels {
        Execution::Parallel
    } else {
        Execution::Sequential
    };
    let levels = exec
        .map(ladder.len(), |l| {
            run_level(config, &case, ladder[l]).map_err(|e| Error::Level {
                level: l,
                h: ladder[l],
                source: Box::new(e),
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport { levels })
}

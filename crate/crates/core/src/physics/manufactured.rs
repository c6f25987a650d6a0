//! Problem data and the manufactured verification solution
//!
//! ```text
//! p_l = 2 + x y^2 + x^2 sin(t + y)
//! s_a = (1 + 2 x^2 y^2 + cos(t + x)) / 8
//! s_v = (3 - cos(t + x)) / 8
//! ```
//!
//! with sources `q_j = phi d_t s_j - div(kappa lambda_j (grad p_j - rho_j g))`
//! expanded analytically through the chain rule, where `p_v = p_l + p_cv(s_v)`
//! and `p_a = p_l - p_ca(s_a)`.

use super::closures::{capillary_pressure_a, capillary_pressure_v, mobilities, mobility_partials, SaturationPair};
use super::{BoundaryConditions, FluidProperties, Permeability, Phases};
use crate::dg::Unknown;
use crate::error::{Error, Result};

/// Everything the discrete scheme needs from a problem: data, boundary
/// conditions, sources and an exact solution (initial data, Dirichlet data
/// and error measurement).
pub trait Case: Sync + Send {
    fn fluids(&self) -> &FluidProperties;

    fn boundary(&self) -> &BoundaryConditions;

    fn exact(&self, unknown: Unknown, t: f64, x: f64, y: f64) -> f64;

    /// Sources `q_l`, `q_v`, `q_a`.
    fn sources(&self, t: f64, x: f64, y: f64) -> Phases;

    /// Prescribed Neumann flux of `unknown` on a boundary point with outward normal `n`.
    fn neumann_flux(&self, unknown: Unknown, t: f64, x: f64, y: f64, n: [f64; 2]) -> f64;
}

/// Value with first space/time derivatives and the Laplacian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub grad: [f64; 2],
    pub dt: f64,
    pub laplacian: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactState {
    pub pressure: Jet,
    pub aqueous: Jet,
    pub vapor: Jet,
}

/// The manufactured solution with configurable fluids and boundary types.
#[derive(Debug, Clone)]
pub struct ManufacturedCase {
    fluids: FluidProperties,
    boundary: BoundaryConditions,
    kappa: f64,
    frozen_time: Option<f64>,
}

impl ManufacturedCase {
    pub fn new(fluids: FluidProperties) -> Result<Self> {
        fluids.validate()?;
        let kappa = match fluids.permeability {
            Permeability::Uniform(k) => k,
            Permeability::PerElement(_) => {
                return Err(Error::Config(
                    "manufactured sources require a uniform permeability".into(),
                ))
            }
        };
        Ok(ManufacturedCase {
            fluids,
            boundary: BoundaryConditions::all_dirichlet(),
            kappa,
            frozen_time: None,
        })
    }

    /// Constant densities, no gravity.
    pub fn constant_densities() -> Self {
        Self::new(FluidProperties::verification()).expect("valid verification data")
    }

    /// Constant densities with `g = (0, -0.1)`.
    pub fn gravity() -> Self {
        Self::new(FluidProperties::verification().with_gravity([0.0, -0.1])).expect("valid verification data")
    }

    pub fn with_boundary(mut self, boundary: BoundaryConditions) -> Self {
        self.boundary = boundary;
        self
    }

    /// Steady variant: fields are frozen at `t0` and sources are those of the
    /// steady problem (no time derivative).
    pub fn time_frozen(mut self, t0: f64) -> Self {
        self.frozen_time = Some(t0);
        self
    }

    pub fn exact_state(&self, t: f64, x: f64, y: f64) -> ExactState {
        let (t, steady) = match self.frozen_time {
            Some(t0) => (t0, true),
            None => (t, false),
        };
        let (st, ct) = (t + y).sin_cos();
        let (sx, cx) = (t + x).sin_cos();
        let pressure = Jet {
            value: 2.0 + x * y * y + x * x * st,
            grad: [y * y + 2.0 * x * st, 2.0 * x * y + x * x * ct],
            dt: x * x * ct,
            laplacian: 2.0 * st + 2.0 * x - x * x * st,
        };
        let aqueous = Jet {
            value: (1.0 + 2.0 * x * x * y * y + cx) / 8.0,
            grad: [(4.0 * x * y * y - sx) / 8.0, x * x * y / 2.0],
            dt: -sx / 8.0,
            laplacian: (4.0 * y * y - cx) / 8.0 + x * x / 2.0,
        };
        let vapor = Jet {
            value: (3.0 - cx) / 8.0,
            grad: [sx / 8.0, 0.0],
            dt: sx / 8.0,
            laplacian: cx / 8.0,
        };
        let mut s = ExactState {
            pressure,
            aqueous,
            vapor,
        };
        if steady {
            s.pressure.dt = 0.0;
            s.aqueous.dt = 0.0;
            s.vapor.dt = 0.0;
        }
        s
    }
}

impl Case for ManufacturedCase {
    fn fluids(&self) -> &FluidProperties {
        &self.fluids
    }

    fn boundary(&self) -> &BoundaryConditions {
        &self.boundary
    }

    fn exact(&self, unknown: Unknown, t: f64, x: f64, y: f64) -> f64 {
        let s = self.exact_state(t, x, y);
        match unknown {
            Unknown::Pressure => s.pressure.value,
            Unknown::Aqueous => s.aqueous.value,
            Unknown::Vapor => s.vapor.value,
        }
    }

    fn sources(&self, t: f64, x: f64, y: f64) -> Phases {
        phase_sources(&self.fluids, self.kappa, &self.exact_state(t, x, y))
    }

    fn neumann_flux(&self, unknown: Unknown, t: f64, x: f64, y: f64, n: [f64; 2]) -> f64 {
        let s = self.exact_state(t, x, y);
        let sat = SaturationPair::new(s.aqueous.value, s.vapor.value);
        let m = mobilities(sat, &self.fluids);
        let lam = m.phase;
        let k = self.kappa;
        let g = self.fluids.gravity;
        let rho = &self.fluids.density;
        let pcv = capillary_pressure_v(s.vapor.value).expect("exact s_v in range");
        let pca = capillary_pressure_a(s.aqueous.value).expect("exact s_a in range");
        let (gp, ga, gv) = (s.pressure.grad, s.aqueous.grad, s.vapor.grad);
        let flux: [f64; 2] = std::array::from_fn(|i| match unknown {
            Unknown::Pressure => {
                m.total * k * gp[i] + lam.vapor * k * pcv.derivative * gv[i]
                    - lam.aqueous * k * pca.derivative * ga[i]
                    - k * m.rho_total * g[i]
            }
            Unknown::Aqueous => {
                -k * lam.aqueous * pca.derivative * ga[i] + k * lam.aqueous * gp[i]
                    - rho.aqueous * k * lam.aqueous * g[i]
            }
            Unknown::Vapor => {
                k * lam.vapor * pcv.derivative * gv[i] + k * lam.vapor * gp[i] - rho.vapor * k * lam.vapor * g[i]
            }
        });
        flux[0] * n[0] + flux[1] * n[1]
    }
}

/// Spatially constant fields with zero sources and no gravity.
#[derive(Debug, Clone)]
pub struct ConstantCase {
    fluids: FluidProperties,
    boundary: BoundaryConditions,
    values: [f64; 3],
}

impl ConstantCase {
    pub fn new(pressure: f64, aqueous: f64, vapor: f64) -> Self {
        ConstantCase {
            fluids: FluidProperties::verification(),
            boundary: BoundaryConditions::all_dirichlet(),
            values: [pressure, aqueous, vapor],
        }
    }
}

impl Case for ConstantCase {
    fn fluids(&self) -> &FluidProperties {
        &self.fluids
    }

    fn boundary(&self) -> &BoundaryConditions {
        &self.boundary
    }

    fn exact(&self, unknown: Unknown, _t: f64, _x: f64, _y: f64) -> f64 {
        self.values[unknown.index()]
    }

    fn sources(&self, _t: f64, _x: f64, _y: f64) -> Phases {
        Phases::default()
    }

    fn neumann_flux(&self, _unknown: Unknown, _t: f64, _x: f64, _y: f64, _n: [f64; 2]) -> f64 {
        0.0
    }
}

/// Sources `q_j = phi d_t s_j - div(kappa lambda_j (grad p_j - rho_j g))` for a
/// smooth state given through its jets, with uniform permeability `kappa`.
pub fn phase_sources(fluids: &FluidProperties, kappa: f64, s: &ExactState) -> Phases {
    let sat = SaturationPair::new(s.aqueous.value, s.vapor.value);
    let lam = mobilities(sat, fluids).phase;
    let dlam = mobility_partials(sat, fluids);
    let pcv = capillary_pressure_v(s.vapor.value).expect("s_v in capillary range");
    let pca = capillary_pressure_a(s.aqueous.value).expect("s_a in capillary range");
    let gp = s.pressure.grad;
    let (ga, gv) = (s.aqueous.grad, s.vapor.grad);
    let norm2 = |g: [f64; 2]| g[0] * g[0] + g[1] * g[1];
    // Gradient and Laplacian of p_l, p_v = p_l + p_cv(s_v), p_a = p_l - p_ca(s_a).
    let pressures = [
        (gp, s.pressure.laplacian),
        (
            [gp[0] + pcv.derivative * gv[0], gp[1] + pcv.derivative * gv[1]],
            s.pressure.laplacian + pcv.second_derivative * norm2(gv) + pcv.derivative * s.vapor.laplacian,
        ),
        (
            [gp[0] - pca.derivative * ga[0], gp[1] - pca.derivative * ga[1]],
            s.pressure.laplacian - pca.second_derivative * norm2(ga) - pca.derivative * s.aqueous.laplacian,
        ),
    ];
    let rho = &fluids.density;
    let g = fluids.gravity;
    let lams = [lam.liquid, lam.vapor, lam.aqueous];
    let rhos = [rho.liquid, rho.vapor, rho.aqueous];
    let dts = [-(s.aqueous.dt + s.vapor.dt), s.vapor.dt, s.aqueous.dt];
    let q: [f64; 3] = std::array::from_fn(|j| {
        let grad_lam = [
            dlam[j][0] * ga[0] + dlam[j][1] * gv[0],
            dlam[j][0] * ga[1] + dlam[j][1] * gv[1],
        ];
        let (gpj, lpj) = pressures[j];
        let drive = [gpj[0] - rhos[j] * g[0], gpj[1] - rhos[j] * g[1]];
        let div = kappa * (grad_lam[0] * drive[0] + grad_lam[1] * drive[1] + lams[j] * lpj);
        fluids.porosity * dts[j] - div
    });
    Phases::new(q[0], q[1], q[2])
}

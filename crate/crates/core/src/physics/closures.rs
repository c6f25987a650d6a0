//! Relative permeabilities, mobilities and capillary pressures.
//!
//! `k_rl = s_l (s_l + s_a)(1 - s_a)`, `k_rv = s_v^2`, `k_ra = s_a^2`,
//! `p_cv = c_v ln(1.01 - s_v)`, `p_ca = c_a ln(s_a + 0.01)` with
//! `c_v = 3.9 / ln(0.01)` and `c_a = 6.3 / ln(0.01)`.

use super::{FluidProperties, Phases};
use crate::error::{Error, Result};

/// Cutoff applied to saturations before any coefficient evaluation.
pub const EPS_SATURATION: f64 = 1e-3;

/// `3.9 / ln(0.01)`.
pub const PCV_COEFF: f64 = 3.9 / -4.605_170_185_988_091;
/// `6.3 / ln(0.01)`.
pub const PCA_COEFF: f64 = 6.3 / -4.605_170_185_988_091;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaturationPair {
    pub aqueous: f64,
    pub vapor: f64,
}

impl SaturationPair {
    pub fn new(aqueous: f64, vapor: f64) -> Self {
        SaturationPair { aqueous, vapor }
    }

    pub fn liquid(&self) -> f64 {
        1.0 - self.aqueous - self.vapor
    }
}

/// Clamps both saturations to `[eps, 1 - eps]`. The liquid saturation is
/// recomputed from the clamped values and may leave `[0, 1]`.
pub fn clamp(aqueous: f64, vapor: f64, eps: f64) -> SaturationPair {
    SaturationPair {
        aqueous: aqueous.clamp(eps, 1.0 - eps),
        vapor: vapor.clamp(eps, 1.0 - eps),
    }
}

/// Relative permeabilities as liquid / vapor / aqueous.
pub fn relative_permeabilities(s: SaturationPair) -> Phases {
    let (sa, sv) = (s.aqueous, s.vapor);
    let sl = s.liquid();
    Phases::new(sl * (sl + sa) * (1.0 - sa), sv * sv, sa * sa)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobilities {
    pub phase: Phases,
    /// `lambda_l + lambda_v + lambda_a`.
    pub total: f64,
    /// `rho_l lambda_l + rho_v lambda_v + rho_a lambda_a`.
    pub rho_total: f64,
}

/// Mobilities `k_rj / mu_j`. The liquid relative permeability is floored at 0.
pub fn mobilities(s: SaturationPair, fluids: &FluidProperties) -> Mobilities {
    let kr = relative_permeabilities(s);
    let mu = &fluids.viscosity;
    let phase = Phases::new(kr.liquid.max(0.0) / mu.liquid, kr.vapor / mu.vapor, kr.aqueous / mu.aqueous);
    Mobilities {
        phase,
        total: phase.total(),
        rho_total: phase.dot(&fluids.density),
    }
}

/// Partial derivatives `[d/ds_a, d/ds_v]` of the liquid, vapor and aqueous
/// mobilities (unclamped, no floor).
pub fn mobility_partials(s: SaturationPair, fluids: &FluidProperties) -> [[f64; 2]; 3] {
    let (sa, sv) = (s.aqueous, s.vapor);
    let mu = &fluids.viscosity;
    // k_rl = (1 - s_a - s_v)(1 - s_v)(1 - s_a)
    let dl_dsa = -(1.0 - sv) * (2.0 - 2.0 * sa - sv);
    let dl_dsv = -(1.0 - sa) * (2.0 - sa - 2.0 * sv);
    [
        [dl_dsa / mu.liquid, dl_dsv / mu.liquid],
        [0.0, 2.0 * sv / mu.vapor],
        [2.0 * sa / mu.aqueous, 0.0],
    ]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapillaryV {
    pub value: f64,
    /// `d p_cv / d s_v`, positive.
    pub derivative: f64,
    pub second_derivative: f64,
}

/// Vapor capillary pressure and its derivatives.
pub fn capillary_pressure_v(sv: f64) -> Result<CapillaryV> {
    let r = 1.01 - sv;
    if !(r > 0.0) {
        return Err(Error::CapillaryDomain(sv));
    }
    Ok(CapillaryV {
        value: PCV_COEFF * r.ln(),
        derivative: -PCV_COEFF / r,
        second_derivative: -PCV_COEFF / (r * r),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapillaryA {
    pub value: f64,
    /// `d p_ca / d s_a`, negative.
    pub derivative: f64,
    /// `-(d p_ca / d s_a)`, the diffusivity factor of the aqueous equation.
    pub positive_part: f64,
    pub second_derivative: f64,
}

/// Aqueous capillary pressure and its derivatives.
pub fn capillary_pressure_a(sa: f64) -> Result<CapillaryA> {
    let r = sa + 0.01;
    if !(r > 0.0) {
        return Err(Error::CapillaryDomain(sa));
    }
    let derivative = PCA_COEFF / r;
    Ok(CapillaryA {
        value: PCA_COEFF * r.ln(),
        derivative,
        positive_part: -derivative,
        second_derivative: -PCA_COEFF / (r * r),
    })
}

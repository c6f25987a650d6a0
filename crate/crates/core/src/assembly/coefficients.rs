//! Pointwise coefficient evaluation for the three equations.

use crate::dg::{DgField, Unknown};
use crate::physics::{
    capillary_pressure_a, capillary_pressure_v, clamp, mobilities, FluidProperties, Phases,
};

/// Every nonlinear coefficient the forms need at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointCoefficients {
    pub kappa: f64,
    pub mobility: Phases,
    pub total: f64,
    pub rho_total: f64,
    /// `d p_cv / d s_v`.
    pub dpcv: f64,
    /// `-(d p_ca / d s_a)`.
    pub dpca_plus: f64,
    pub grad_pcv: [f64; 2],
    pub grad_pca: [f64; 2],
}

impl PointCoefficients {
    /// Diffusivity of the equation for `unknown`: `kappa lambda_t`,
    /// `kappa lambda_a (d p_ca)^+` or `kappa lambda_v d p_cv`.
    #[inline]
    pub fn diffusivity(&self, unknown: Unknown) -> f64 {
        match unknown {
            Unknown::Pressure => self.kappa * self.total,
            Unknown::Aqueous => self.kappa * self.mobility.aqueous * self.dpca_plus,
            Unknown::Vapor => self.kappa * self.mobility.vapor * self.dpcv,
        }
    }

    /// Mobility of the phase advected by the saturation equation of `unknown`.
    #[inline]
    pub fn advected_mobility(&self, unknown: Unknown) -> f64 {
        match unknown {
            Unknown::Aqueous => self.mobility.aqueous,
            Unknown::Vapor => self.mobility.vapor,
            Unknown::Pressure => self.total,
        }
    }
}

/// Source of [`PointCoefficients`] at reference points of elements.
pub trait Coefficients: Sync {
    fn at(&self, k: usize, xi: f64, eta: f64) -> PointCoefficients;
}

/// Closures evaluated at discrete saturations (with cutoff).
#[derive(Debug, Clone, Copy)]
pub struct LaggedCoefficients<'a> {
    pub aqueous: &'a DgField,
    pub vapor: &'a DgField,
    pub fluids: &'a FluidProperties,
    pub eps: f64,
}

impl Coefficients for LaggedCoefficients<'_> {
    fn at(&self, k: usize, xi: f64, eta: f64) -> PointCoefficients {
        let (sa, gsa) = self.aqueous.value_grad(k, xi, eta);
        let (sv, gsv) = self.vapor.value_grad(k, xi, eta);
        let s = clamp(sa, sv, self.eps);
        let m = mobilities(s, self.fluids);
        // Clamped saturations are always inside both capillary domains.
        let pcv = capillary_pressure_v(s.vapor).expect("clamped s_v");
        let pca = capillary_pressure_a(s.aqueous).expect("clamped s_a");
        // The cutoff is flat outside [eps, 1 - eps].
        let active = |raw: f64, c: f64| if raw == c { 1.0 } else { 0.0 };
        let cv = pcv.derivative * active(sv, s.vapor);
        let ca = pca.derivative * active(sa, s.aqueous);
        PointCoefficients {
            kappa: self.fluids.permeability.at(k),
            mobility: m.phase,
            total: m.total,
            rho_total: m.rho_total,
            dpcv: pcv.derivative,
            dpca_plus: pca.positive_part,
            grad_pcv: [cv * gsv[0], cv * gsv[1]],
            grad_pca: [ca * gsa[0], ca * gsa[1]],
        }
    }
}

/// The same coefficients everywhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrozenCoefficients(pub PointCoefficients);

impl FrozenCoefficients {
    /// Unit diffusivity in every equation, no capillary gradients and zero
    /// density-weighted mobility.
    pub fn unit() -> Self {
        FrozenCoefficients(PointCoefficients {
            kappa: 1.0,
            mobility: Phases::new(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0),
            total: 1.0,
            rho_total: 0.0,
            dpcv: 3.0,
            dpca_plus: 3.0,
            grad_pcv: [0.0; 2],
            grad_pca: [0.0; 2],
        })
    }
}

impl Coefficients for FrozenCoefficients {
    fn at(&self, _k: usize, _xi: f64, _eta: f64) -> PointCoefficients {
        self.0
    }
}

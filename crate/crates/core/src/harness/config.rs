//! Run configuration and its flat `key = value` text form.

use std::path::PathBuf;
use std::str::FromStr;

use crate::assembly::{InteriorPenalty, SchemeConfig, Theta, VaporCoefficientState};
use crate::dg::Unknown;
use crate::error::{Error, Result};
use crate::par::Execution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CaseName {
    /// Manufactured solution, constant densities, no gravity.
    #[default]
    ConstantDensities,
    /// Manufactured solution with `g = (0, -0.1)`.
    Gravity,
    /// Manufactured solution with the configured gravity vector.
    Custom,
}

impl FromStr for CaseName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant_densities" => Ok(CaseName::ConstantDensities),
            "gravity" => Ok(CaseName::Gravity),
            "custom" => Ok(CaseName::Custom),
            _ => Err(Error::Config(format!(
                "unknown case '{s}' (expected constant_densities, gravity or custom)"
            ))),
        }
    }
}

/// Time step as a function of the ladder mesh size.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum TauRule {
    /// `tau = h`.
    #[default]
    H,
    /// `tau = h^2`.
    H2,
    /// The same `tau` on every level.
    Explicit(f64),
}

impl TauRule {
    pub fn tau(self, h: f64) -> f64 {
        match self {
            TauRule::H => h,
            TauRule::H2 => h * h,
            TauRule::Explicit(t) => t,
        }
    }
}

impl FromStr for TauRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h" => Ok(TauRule::H),
            "h2" => Ok(TauRule::H2),
            _ => s
                .parse::<f64>()
                .ok()
                .filter(|t| *t > 0.0 && t.is_finite())
                .map(TauRule::Explicit)
                .ok_or_else(|| Error::Config(format!("tau rule must be h, h2 or a positive number, got '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Markdown,
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Markdown => "md",
        }
    }
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            _ => Err(Error::Config(format!("format must be csv or markdown, got '{s}'"))),
        }
    }
}

/// A convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub case: CaseName,
    pub scheme: SchemeConfig,
    /// Cell size of the coarsest mesh.
    pub h0: f64,
    pub levels: usize,
    pub tau_rule: TauRule,
    pub final_time: f64,
    /// Overrides the gravity of the selected case.
    pub gravity: Option<[f64; 2]>,
    pub out: Option<PathBuf>,
    pub format: ReportFormat,
    /// Run the ladder levels concurrently.
    pub parallel_levels: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            case: CaseName::ConstantDensities,
            scheme: SchemeConfig::default(),
            h0: 0.5,
            levels: 5,
            tau_rule: TauRule::H,
            final_time: 1.0,
            gravity: None,
            out: None,
            format: ReportFormat::Csv,
            parallel_levels: false,
        }
    }
}

impl RunConfig {
    /// Mesh cell sizes of the ladder.
    pub fn ladder(&self) -> Vec<f64> {
        (0..self.levels).map(|l| self.h0 / f64::powi(2.0, l as i32)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.levels < 2 {
            return Err(Error::Config(format!("at least 2 levels are needed for rates, got {}", self.levels)));
        }
        let n = 1.0 / self.h0;
        if !(self.h0 > 0.0 && self.h0 <= 1.0 && (n - n.round()).abs() < 1e-9) {
            return Err(Error::Config(format!("h0 must be 1/n for an integer n, got {}", self.h0)));
        }
        if !(self.final_time >= 0.0 && self.final_time.is_finite()) {
            return Err(Error::Config(format!("final time must be non-negative, got {}", self.final_time)));
        }
        if let Some(g) = self.gravity {
            if !g.iter().all(|c| c.is_finite()) {
                return Err(Error::Config("gravity must be finite".into()));
            }
        }
        self.scheme.validate()
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "case" => self.case = value.parse()?,
            "levels" => self.levels = parse_num(key, value)?,
            "h0" => self.h0 = parse_num(key, value)?,
            "tau_rule" | "tau-rule" => self.tau_rule = value.parse()?,
            "final_time" | "final-time" => self.final_time = parse_num(key, value)?,
            "theta" => {
                let t = parse_triple(key, value)?;
                for u in Unknown::ALL {
                    let ip = self.scheme.penalty(u);
                    self.scheme = self.scheme.with_penalty(u, InteriorPenalty::new(Theta::from_value(t[u.index()])?, ip.alpha)?);
                }
            }
            "alpha" => {
                let a = parse_triple(key, value)?;
                for u in Unknown::ALL {
                    let ip = self.scheme.penalty(u);
                    self.scheme = self.scheme.with_penalty(u, InteriorPenalty::new(ip.theta, a[u.index()])?);
                }
            }
            "gravity" => {
                let g = parse_list(key, value)?;
                if g.len() != 2 {
                    return Err(Error::Config(format!("gravity needs two components, got '{value}'")));
                }
                self.gravity = Some([g[0], g[1]]);
            }
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => self.format = value.parse()?,
            "vapor_coeff_state" => {
                self.scheme.vapor_coefficients = match value {
                    "lagged" => VaporCoefficientState::Lagged,
                    "fresh_sa" => VaporCoefficientState::FreshAqueous,
                    _ => return Err(Error::Config(format!("vapor_coeff_state must be lagged or fresh_sa, got '{value}'"))),
                }
            }
            "eps" => self.scheme.eps = parse_num(key, value)?,
            "execution" => {
                self.scheme.execution = match value {
                    "sequential" => Execution::Sequential,
                    "parallel" => Execution::Parallel,
                    _ => return Err(Error::Config(format!("execution must be sequential or parallel, got '{value}'"))),
                }
            }
            "parallel_levels" => self.parallel_levels = parse_num(key, value)?,
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Applies every setting of a flat `key = value` document. Blank lines
    /// and lines starting with `#` are skipped; values may be quoted.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            let v = v.trim();
            let v = v
                .strip_prefix('"')
                .and_then(|s| s.strip_suffix('"'))
                .unwrap_or(v);
            self.set(k, v).map_err(|e| match e {
                Error::Config(m) => Error::Config(format!("line {}: {m}", i + 1)),
                e => e,
            })?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut c = RunConfig::default();
        c.apply_text(text)?;
        Ok(c)
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("invalid value '{value}' for {key}")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value
        .trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|s| parse_num(key, s.trim()))
        .collect()
}

/// One value for all three equations or three comma-separated values.
fn parse_triple(key: &str, value: &str) -> Result<[f64; 3]> {
    match parse_list(key, value)?.as_slice() {
        [v] => Ok([*v; 3]),
        [a, b, c] => Ok([*a, *b, *c]),
        _ => Err(Error::Config(format!("{key} needs 1 or 3 values, got '{value}'"))),
    }
}

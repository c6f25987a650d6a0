//! Convergence tables as CSV or markdown.

use std::fmt::Write as _;
use std::path::Path;

use super::ReportFormat;
use crate::dg::Unknown;
use crate::error::Result;

/// Final-time errors on one ladder level.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelResult {
    /// Cell size.
    pub h: f64,
    /// Degrees of freedom per unknown (four per element).
    pub dofs: usize,
    pub tau: f64,
    pub steps: usize,
    /// L2 errors, pressure / aqueous / vapor.
    pub l2: [f64; 3],
    pub coercivity: [f64; 3],
    pub clamp_activated: bool,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub levels: Vec<LevelResult>,
}

impl ConvergenceReport {
    /// `log2(e_{l-1} / e_l)` for `l >= 1`.
    pub fn rate(&self, level: usize, unknown: Unknown) -> Option<f64> {
        if level == 0 || level >= self.levels.len() {
            return None;
        }
        let i = unknown.index();
        Some((self.levels[level - 1].l2[i] / self.levels[level].l2[i]).log2())
    }

    /// Rate of the finest pair of levels.
    pub fn final_rate(&self, unknown: Unknown) -> Option<f64> {
        self.rate(self.levels.len().checked_sub(1)?, unknown)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("h,dofs,err_p,rate_p,err_sa,rate_sa,err_sv,rate_sv\n");
        for (l, row) in self.levels.iter().enumerate() {
            write!(s, "{:e},{}", row.h, row.dofs).unwrap();
            for u in Unknown::ALL {
                write!(s, ",{:e},", row.l2[u.index()]).unwrap();
                if let Some(r) = self.rate(l, u) {
                    write!(s, "{r:e}").unwrap();
                }
            }
            s.push('\n');
        }
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        s.push_str("| h | DOFs | p error | rate | s_a error | rate | s_v error | rate |\n");
        s.push_str("|---|---|---|---|---|---|---|---|\n");
        for (l, row) in self.levels.iter().enumerate() {
            write!(s, "| {} | {} ", row.h, row.dofs).unwrap();
            for u in Unknown::ALL {
                let rate = self.rate(l, u).map(|r| format!("{r:.2}")).unwrap_or_else(|| "-".into());
                write!(s, "| {:.2e} | {} ", row.l2[u.index()], rate).unwrap();
            }
            s.push_str("|\n");
        }
        s
    }

    /// One line with the finest-pair rates.
    pub fn summary(&self) -> String {
        let parts: Vec<String> = Unknown::ALL
            .iter()
            .map(|&u| match self.final_rate(u) {
                Some(r) => format!("{} {r:.2}", u.label()),
                None => format!("{} -", u.label()),
            })
            .collect();
        format!("final rates: {}", parts.join(", "))
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Csv => self.to_csv(),
            ReportFormat::Markdown => self.to_markdown(),
        }
    }
}

/// Writes the report to `path`.
pub fn emit_report(report: &ConvergenceReport, format: ReportFormat, path: &Path) -> Result<()> {
    std::fs::write(path, report.render(format))?;
    Ok(())
}

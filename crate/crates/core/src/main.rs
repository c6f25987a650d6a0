use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use threephase_dg::harness::{convergence_study, emit_report, RunConfig};
use threephase_dg::Error;

/// Convergence study of the three-phase DG scheme on a manufactured solution.
#[derive(Debug, Parser)]
#[command(name = "threephase", version)]
struct Cli {
    /// constant_densities, gravity or custom.
    #[arg(long)]
    case: Option<String>,
    /// Number of ladder levels.
    #[arg(long)]
    levels: Option<String>,
    /// Cell size of the coarsest mesh.
    #[arg(long)]
    h0: Option<String>,
    /// h, h2 or an explicit time step.
    #[arg(long = "tau-rule")]
    tau_rule: Option<String>,
    /// One value or three comma-separated values (pressure, aqueous, vapor).
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// One value or three comma-separated values (pressure, aqueous, vapor).
    #[arg(long)]
    alpha: Option<String>,
    /// Gravity vector as `gx,gy`.
    #[arg(long, allow_hyphen_values = true)]
    gravity: Option<String>,
    /// Final time.
    #[arg(long = "final-time")]
    final_time: Option<String>,
    /// Report path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or markdown.
    #[arg(long)]
    format: Option<String>,
    /// Flat `key = value` file; flags override its settings.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Disable the thread pool.
    #[arg(long)]
    sequential: bool,
}

fn configure(cli: &Cli) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        cfg.apply_text(&text)?;
    }
    let flags = [
        ("case", &cli.case),
        ("levels", &cli.levels),
        ("h0", &cli.h0),
        ("tau_rule", &cli.tau_rule),
        ("theta", &cli.theta),
        ("alpha", &cli.alpha),
        ("gravity", &cli.gravity),
        ("final_time", &cli.final_time),
        ("format", &cli.format),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    if cli.sequential {
        cfg.set("execution", "sequential")?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match configure(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match convergence_study(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_config() { 2 } else { 1 });
        }
    };
    for level in &report.levels {
        for w in &level.warnings {
            eprintln!("warning (h = {}): {w}", level.h);
        }
    }
    let path = cfg
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("convergence.{}", cfg.format.extension())));
    if let Err(e) = emit_report(&report, cfg.format, &path) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    println!("report written to {}", path.display());
    println!("{}", report.summary());
    ExitCode::SUCCESS
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tripod_scan::output::{emit, meta_path, scan_csv, trajectory_csv};
use tripod_scan::{run_propagate, run_report, run_scan, RunError, ScanSpec, SystemConfig};

#[derive(Parser)]
#[command(
    name = "tripod",
    version,
    about = "Tripod continuum model: propagation, scans and diagnostics"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Populations along one trajectory (t,P1,P2,P3,Pi,norm).
    Propagate(Common),
    /// Coincident-pulse populations against pulse area.
    ScanArea(Common),
    /// Final populations against pulse width, trapping detunings.
    ScanWidth(Common),
    /// Final populations over the (delta1+delta2, delta1-delta2) plane.
    ScanDetuning(Common),
    /// Eigenvalues, angles, adiabaticity window and crossing data as JSON.
    Report(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for scans.
    #[arg(long)]
    workers: Option<usize>,
    /// Overrides grid.tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

impl Common {
    fn load(&self) -> Result<SystemConfig, RunError> {
        let mut cfg = SystemConfig::load(&self.config)?;
        if let Some(tol) = self.tol {
            cfg.grid.tolerance = tol;
            cfg.validate()?;
        }
        Ok(cfg)
    }
}

fn write_scan(c: &Common, cfg: &SystemConfig, spec: ScanSpec) -> Result<(), RunError> {
    let table = run_scan(cfg, &spec, c.workers)?;
    emit(c.out.as_deref(), &scan_csv(&table))?;
    if let Some(out) = &c.out {
        let meta = serde_json::to_string_pretty(&table.meta).expect("metadata is plain JSON");
        std::fs::write(meta_path(out), meta + "\n")?;
    }
    if let Some(dev) = table
        .meta
        .get("numeric_check_max_deviation")
        .and_then(|v| v.as_f64())
    {
        eprintln!("numeric check: largest deviation from closed form {dev:.3e}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), RunError> {
    match cli.cmd {
        Cmd::Propagate(c) => {
            let cfg = c.load()?;
            emit(c.out.as_deref(), &trajectory_csv(&run_propagate(&cfg)?))?;
        }
        Cmd::ScanArea(c) => {
            let cfg = c.load()?;
            write_scan(&c, &cfg, ScanSpec::area(&cfg))?;
        }
        Cmd::ScanWidth(c) => {
            let cfg = c.load()?;
            let spec = ScanSpec::width(&cfg)?;
            write_scan(&c, &cfg, spec)?;
        }
        Cmd::ScanDetuning(c) => {
            let cfg = c.load()?;
            write_scan(&c, &cfg, ScanSpec::detuning(&cfg))?;
        }
        Cmd::Report(c) => {
            let cfg = c.load()?;
            let report = run_report(&cfg)?;
            let text = serde_json::to_string_pretty(&report).expect("report is plain JSON");
            emit(c.out.as_deref(), &(text + "\n"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tripod: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

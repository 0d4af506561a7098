//! Configuration, sweeps and reports behind the `tripod` command.

pub mod config;
pub mod error;
pub mod output;
pub mod report;
pub mod scan;

pub use config::{System, SystemConfig};
pub use error::RunError;
pub use report::{run_report, Report};
pub use scan::{run_scan, ScanSpec, ScanTable};

/// Propagates the configured system over its sample grid.
pub fn run_propagate(cfg: &SystemConfig) -> Result<tripod_core::Trajectory64, RunError> {
    let sys = cfg.system();
    Ok(tripod_core::propagate(
        &sys.fano,
        &sys.pulses,
        &sys.policy,
        &sys.initial,
        &sys.grid,
    )?)
}

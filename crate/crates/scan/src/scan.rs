//! The three reproduction sweeps: pulse area, pulse width and the detuning
//! plane.

use rayon::prelude::*;
use serde_json::{json, Value};
use tripod_core::analytic::{coincident_populations, CoincidentSpec};
use tripod_core::{
    propagate, DetuningPolicy, Envelope, FanoParams64, Populations64, PulseShape, PulseTriple,
    TimeGrid,
};

use crate::config::{window_for, System, SystemConfig};
use crate::error::RunError;

#[derive(Debug, Clone, PartialEq)]
pub enum ScanSpec {
    /// Coincident pulses, closed form; `numeric_check` also propagates each point.
    Area {
        range: [f64; 2],
        steps: usize,
        numeric_check: bool,
    },
    /// Every Gaussian rescaled so the widest has width `T`; trapping detunings.
    Width { range: [f64; 2], steps: usize },
    /// Static detunings over `(delta1 + delta2, delta1 - delta2)` for each
    /// constant control rate.
    Detuning {
        sum: [f64; 2],
        diff: [f64; 2],
        steps: [usize; 2],
        gamma3: Vec<f64>,
    },
}

impl ScanSpec {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Area { .. } => "area",
            Self::Width { .. } => "width",
            Self::Detuning { .. } => "detuning",
        }
    }

    pub fn columns(&self) -> Vec<&'static str> {
        let coords: &[&str] = match self {
            Self::Area { .. } => &["A"],
            Self::Width { .. } => &["T"],
            Self::Detuning { .. } => &["gamma3", "delta_sum", "delta_diff"],
        };
        coords
            .iter()
            .chain(["P1", "P2", "P3", "Pi"].iter())
            .copied()
            .collect()
    }

    pub fn row_count(&self) -> usize {
        match self {
            Self::Area { steps, .. } | Self::Width { steps, .. } => *steps,
            Self::Detuning { steps, gamma3, .. } => steps[0] * steps[1] * gamma3.len(),
        }
    }

    pub fn area(cfg: &SystemConfig) -> Self {
        let a = cfg.scan.area.unwrap_or(crate::config::AreaSection {
            range: [0.0, 10.0],
            steps: 101,
            numeric_check: false,
        });
        Self::Area {
            range: a.range,
            steps: a.steps,
            numeric_check: a.numeric_check,
        }
    }

    pub fn width(cfg: &SystemConfig) -> Result<Self, RunError> {
        let w = cfg
            .scan
            .width
            .ok_or_else(|| RunError::Config("scan.width: section missing".into()))?;
        Ok(Self::Width {
            range: w.range,
            steps: w.steps,
        })
    }

    pub fn detuning(cfg: &SystemConfig) -> Self {
        let d = cfg.scan.detuning.clone().unwrap_or_default();
        Self::Detuning {
            sum: d.sum,
            diff: d.diff,
            steps: d.steps,
            gamma3: d.gamma3,
        }
    }
}

/// Scan output in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanTable {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    /// Ranges, defaults and checks; deterministic for a given config.
    pub meta: Value,
}

/// `n` evenly spaced points from `r[0]` to exactly `r[1]`.
pub fn linspace(r: [f64; 2], n: usize) -> Vec<f64> {
    let h = (r[1] - r[0]) / (n - 1) as f64;
    (0..n)
        .map(|k| {
            if k + 1 == n {
                r[1]
            } else {
                r[0] + h * k as f64
            }
        })
        .collect()
}

fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool, RunError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        if n == 0 {
            return Err(RunError::Config("--workers must be >= 1".into()));
        }
        b = b.num_threads(n);
    }
    b.build()
        .map_err(|e| RunError::Config(format!("cannot start worker pool: {e}")))
}

fn final_populations(
    q: &FanoParams64,
    pulses: &tripod_core::PulseTriple64,
    policy: &tripod_core::DetuningPolicy64,
    sys: &System,
    grid: tripod_core::TimeGrid64,
) -> Result<Populations64, RunError> {
    let grid = grid.with_tol(sys.grid.tol).with_samples(2);
    Ok(propagate(q, pulses, policy, &sys.initial, &grid)?.final_populations())
}

fn row(coords: &[f64], p: &Populations64) -> Vec<f64> {
    coords.iter().copied().chain(p.as_array()).collect()
}

pub fn run_scan(
    cfg: &SystemConfig,
    spec: &ScanSpec,
    workers: Option<usize>,
) -> Result<ScanTable, RunError> {
    let sys = cfg.system();
    let pool = pool(workers)?;
    let columns = spec.columns();
    match spec {
        ScanSpec::Area {
            range,
            steps,
            numeric_check,
        } => {
            check(*range, *steps, "area")?;
            let q = sys.fano;
            let same = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
            if !(same(q.q12, q.q13) && same(q.q12, q.q23)) {
                return Err(RunError::Config(
                    "scan-area needs q12 = q13 = q23 (closed form assumes equal Fano parameters)"
                        .into(),
                ));
            }
            if sys.initial.0[0].norm_sqr() != 1.0 {
                return Err(RunError::Config(
                    "scan-area closed form starts in state 1 (grid.initial_state = 1)".into(),
                ));
            }
            let weights = sys.pulses.shapes().map(|p| p.peak());
            let areas = linspace(*range, *steps);
            let rows: Vec<Vec<f64>> = areas
                .iter()
                .map(|&a| {
                    Ok(row(
                        &[a],
                        &coincident_populations(&CoincidentSpec::new(weights, q.q12, a))?,
                    ))
                })
                .collect::<Result<_, RunError>>()?;
            let mut meta = json!({
                "scan": "area",
                "range": range,
                "steps": steps,
                "weights": weights,
                "q": q.q12,
                "method": "closed form for coincident pulses",
            });
            if *numeric_check {
                let env = Envelope::new(0.0, 1.0);
                let total: f64 = weights.iter().sum();
                let deviations: Vec<f64> = pool.install(|| {
                    areas
                        .par_iter()
                        .zip(rows.par_iter())
                        .map(|(&a, r)| {
                            let k = a / (total * env.area());
                            let p = PulseTriple::coincident(weights.map(|g| g * k), env);
                            let grid = TimeGrid::symmetric(p.span_with(sys.t_span).unwrap());
                            let num =
                                final_populations(&q, &p, &DetuningPolicy::AutoTrap, &sys, grid)?;
                            Ok(num
                                .as_array()
                                .iter()
                                .zip(&r[1..])
                                .map(|(x, y)| (x - y).abs())
                                .fold(0.0, f64::max))
                        })
                        .collect::<Result<_, RunError>>()
                })?;
                meta["numeric_check_max_deviation"] =
                    json!(deviations.iter().copied().fold(0.0, f64::max));
            }
            Ok(ScanTable {
                columns,
                rows,
                meta,
            })
        }
        ScanSpec::Width { range, steps } => {
            check(*range, *steps, "width")?;
            let reference = sys.pulses.max_width().ok_or_else(|| {
                RunError::Config("scan-width needs at least one Gaussian pulse".into())
            })?;
            let widths = linspace(*range, *steps);
            let rows = pool.install(|| {
                widths
                    .par_iter()
                    .map(|&w| {
                        let p = sys.pulses.stretched(w / reference);
                        let grid = window_for(&p, None, sys.t_span);
                        let pop = final_populations(
                            &sys.fano,
                            &p,
                            &DetuningPolicy::AutoTrap,
                            &sys,
                            grid,
                        )?;
                        Ok(row(&[w], &pop))
                    })
                    .collect::<Result<Vec<_>, RunError>>()
            })?;
            let meta = json!({
                "scan": "width",
                "range": range,
                "steps": steps,
                "reference_width": reference,
                "policy": "trap",
                "t_span": sys.t_span,
                "tolerance": sys.grid.tol,
            });
            Ok(ScanTable {
                columns,
                rows,
                meta,
            })
        }
        ScanSpec::Detuning {
            sum,
            diff,
            steps,
            gamma3,
        } => {
            check(*sum, steps[0], "detuning.sum")?;
            check(*diff, steps[1], "detuning.diff")?;
            if gamma3.is_empty() {
                return Err(RunError::Config(
                    "scan.detuning.gamma3: must list at least one rate".into(),
                ));
            }
            let sums = linspace(*sum, steps[0]);
            let diffs = linspace(*diff, steps[1]);
            let mut points = Vec::with_capacity(spec.row_count());
            for &g3 in gamma3 {
                for &s in &sums {
                    for &d in &diffs {
                        points.push((g3, s, d));
                    }
                }
            }
            let rows = pool.install(|| {
                points
                    .par_iter()
                    .map(|&(g3, s, d)| {
                        let p = PulseTriple::new(
                            sys.pulses.pump,
                            sys.pulses.stokes,
                            PulseShape::constant(g3),
                        );
                        let policy = DetuningPolicy::Static {
                            delta1: 0.5 * (s + d),
                            delta2: 0.5 * (s - d),
                        };
                        let grid = window_for(&p, cfg.grid.window, sys.t_span);
                        let pop = final_populations(&sys.fano, &p, &policy, &sys, grid)?;
                        Ok(row(&[g3, s, d], &pop))
                    })
                    .collect::<Result<Vec<_>, RunError>>()
            })?;
            let meta = json!({
                "scan": "detuning",
                "sum_range": sum,
                "diff_range": diff,
                "steps": steps,
                "gamma3": gamma3,
                "policy": "static, Stark shifts zero",
                "row_order": ["gamma3", "delta_sum", "delta_diff"],
                "t_span": sys.t_span,
                "tolerance": sys.grid.tol,
            });
            Ok(ScanTable {
                columns,
                rows,
                meta,
            })
        }
    }
}

fn check(r: [f64; 2], steps: usize, what: &str) -> Result<(), RunError> {
    if !(r[0].is_finite() && r[1].is_finite() && r[0] < r[1]) {
        return Err(RunError::Config(format!(
            "scan.{what}: need finite [lo, hi] with lo < hi"
        )));
    }
    if steps < 2 {
        return Err(RunError::Config(format!("scan.{what}: steps must be >= 2")));
    }
    Ok(())
}

/// Index of the largest value in column `col`; the first one on ties.
pub fn argmax(table: &ScanTable, col: &str) -> Option<usize> {
    let k = table.columns.iter().position(|c| *c == col)?;
    let mut best: Option<usize> = None;
    for (i, r) in table.rows.iter().enumerate() {
        if best.is_none_or(|b| r[k] > table.rows[b][k]) {
            best = Some(i);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_hits_both_ends() {
        let v = linspace([-2.0, 14.0], 121);
        assert_eq!(v.len(), 121);
        assert_eq!(v[0], -2.0);
        assert_eq!(v[120], 14.0);
        assert!((v[60] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn columns_and_counts() {
        let s = ScanSpec::Detuning {
            sum: [0.0, 1.0],
            diff: [0.0, 1.0],
            steps: [3, 4],
            gamma3: vec![0.0, 1.0],
        };
        assert_eq!(
            s.columns(),
            ["gamma3", "delta_sum", "delta_diff", "P1", "P2", "P3", "Pi"]
        );
        assert_eq!(s.row_count(), 24);
        assert_eq!(
            ScanSpec::Width {
                range: [1.0, 2.0],
                steps: 5
            }
            .columns(),
            ["T", "P1", "P2", "P3", "Pi"]
        );
    }
}

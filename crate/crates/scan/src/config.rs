//! TOML experiment description.
//!
//! Rates are in units of `gamma0`, times in units of `1/gamma0`. See
//! `configs/` at the repository root for complete examples.

use std::path::Path;

use serde::{Deserialize, Serialize};
use tripod_core::{
    AmplitudeVector64, DetuningPolicy, DetuningPolicy64, FanoParams, FanoParams64, PulseShape,
    PulseShape64, PulseTriple64, TimeGrid, TimeGrid64,
};

use crate::error::RunError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub fano: FanoSection,
    pub pulses: PulsesSection,
    #[serde(default)]
    pub detuning: DetuningSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub scan: ScanSection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanoSection {
    pub q12: f64,
    pub q13: f64,
    pub q23: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulsesSection {
    pub pump: PulseSpec,
    pub stokes: PulseSpec,
    pub control: PulseSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PulseSpec {
    /// `peak * exp(-(t - center)^2 / width^2)`.
    Gaussian {
        peak: f64,
        center: f64,
        width: f64,
    },
    Constant {
        peak: f64,
    },
    /// Gaussian envelope shared with the other `shared` pulses.
    Shared {
        peak: f64,
        center: f64,
        width: f64,
    },
    Off,
}

impl PulseSpec {
    fn shape(&self) -> PulseShape64 {
        match *self {
            Self::Gaussian {
                peak,
                center,
                width,
            } => PulseShape::gaussian(peak, center, width),
            Self::Constant { peak } => PulseShape::constant(peak),
            Self::Shared {
                peak,
                center,
                width,
            } => PulseShape::SharedEnvelope {
                gamma: peak,
                envelope: tripod_core::Envelope::new(center, width),
            },
            Self::Off => PulseShape::off(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "policy", rename_all = "snake_case", deny_unknown_fields)]
pub enum DetuningSection {
    /// Detunings follow the trapping conditions at every instant.
    #[default]
    Trap,
    Static {
        delta1: f64,
        delta2: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    /// Half-window in pulse widths beyond the outermost pulse centre.
    #[serde(default = "default_t_span")]
    pub t_span: f64,
    /// Explicit `[t0, t1]`; overrides `t_span`.
    #[serde(default)]
    pub window: Option<[f64; 2]>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// 1, 2 or 3.
    #[serde(default = "default_initial")]
    pub initial_state: usize,
}

fn default_t_span() -> f64 {
    6.0
}
fn default_tolerance() -> f64 {
    tripod_core::propagator::DEFAULT_TOL
}
fn default_samples() -> usize {
    tripod_core::propagator::DEFAULT_SAMPLES
}
fn default_initial() -> usize {
    1
}

impl Default for GridSection {
    fn default() -> Self {
        Self {
            t_span: default_t_span(),
            window: None,
            tolerance: default_tolerance(),
            samples: default_samples(),
            initial_state: default_initial(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ScanSection {
    pub area: Option<AreaSection>,
    pub width: Option<WidthSection>,
    pub detuning: Option<DetuningGridSection>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AreaSection {
    #[serde(default = "default_area_range")]
    pub range: [f64; 2],
    #[serde(default = "default_area_steps")]
    pub steps: usize,
    /// Also propagate every point numerically and report the largest deviation.
    #[serde(default)]
    pub numeric_check: bool,
}

fn default_area_range() -> [f64; 2] {
    [0.0, 10.0]
}
fn default_area_steps() -> usize {
    101
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WidthSection {
    pub range: [f64; 2],
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetuningGridSection {
    /// `delta1 + delta2`.
    #[serde(default = "default_sum")]
    pub sum: [f64; 2],
    /// `delta1 - delta2`.
    #[serde(default = "default_diff")]
    pub diff: [f64; 2],
    /// Points along `sum` and `diff`.
    #[serde(default = "default_grid_steps")]
    pub steps: [usize; 2],
    #[serde(default = "default_gamma3")]
    pub gamma3: Vec<f64>,
}

fn default_sum() -> [f64; 2] {
    [-2.0, 14.0]
}
fn default_diff() -> [f64; 2] {
    [-6.0, 6.0]
}
fn default_grid_steps() -> [usize; 2] {
    [121, 121]
}
fn default_gamma3() -> Vec<f64> {
    vec![0.0, 1.0, 4.0]
}

impl Default for DetuningGridSection {
    fn default() -> Self {
        Self {
            sum: default_sum(),
            diff: default_diff(),
            steps: default_grid_steps(),
            gamma3: default_gamma3(),
        }
    }
}

/// A parsed config turned into library types.
#[derive(Debug, Clone, PartialEq)]
pub struct System {
    pub fano: FanoParams64,
    pub pulses: PulseTriple64,
    pub policy: DetuningPolicy64,
    pub grid: TimeGrid64,
    pub t_span: f64,
    pub initial: AmplitudeVector64,
}

impl SystemConfig {
    pub fn from_toml(text: &str) -> Result<Self, RunError> {
        let cfg: Self = toml::from_str(text).map_err(|e| RunError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, RunError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            RunError::Config(m) => RunError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<(), RunError> {
        let bad = |field: &str, why: &str| Err(RunError::Config(format!("{field}: {why}")));
        let FanoSection { q12, q13, q23 } = self.fano;
        for (name, v) in [("fano.q12", q12), ("fano.q13", q13), ("fano.q23", q23)] {
            if !v.is_finite() {
                return bad(name, "must be finite");
            }
        }
        for (name, p) in [
            ("pulses.pump", self.pulses.pump),
            ("pulses.stokes", self.pulses.stokes),
            ("pulses.control", self.pulses.control),
        ] {
            match p {
                PulseSpec::Gaussian {
                    peak,
                    center,
                    width,
                }
                | PulseSpec::Shared {
                    peak,
                    center,
                    width,
                } => {
                    if !(peak.is_finite() && peak >= 0.0) {
                        return bad(&format!("{name}.peak"), "must be finite and >= 0");
                    }
                    if !center.is_finite() {
                        return bad(&format!("{name}.center"), "must be finite");
                    }
                    if !(width.is_finite() && width > 0.0) {
                        return bad(&format!("{name}.width"), "must be finite and > 0");
                    }
                }
                PulseSpec::Constant { peak } => {
                    if !(peak.is_finite() && peak >= 0.0) {
                        return bad(&format!("{name}.peak"), "must be finite and >= 0");
                    }
                }
                PulseSpec::Off => {}
            }
        }
        if let DetuningSection::Static { delta1, delta2 } = self.detuning {
            if !(delta1.is_finite() && delta2.is_finite()) {
                return bad("detuning", "delta1 and delta2 must be finite");
            }
        }
        let g = &self.grid;
        if !(g.t_span.is_finite() && g.t_span > 0.0) {
            return bad("grid.t_span", "must be finite and > 0");
        }
        if let Some([a, b]) = g.window {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return bad("grid.window", "must be finite with t0 < t1");
            }
        }
        if !(g.tolerance.is_finite() && g.tolerance > 0.0) {
            return bad("grid.tolerance", "must be finite and > 0");
        }
        if g.samples < 2 {
            return bad("grid.samples", "must be >= 2");
        }
        if !(1..=3).contains(&g.initial_state) {
            return bad("grid.initial_state", "must be 1, 2 or 3");
        }
        if g.window.is_none() && self.pulses().span_with(g.t_span).is_none() {
            return bad("grid.window", "required when no pulse is time dependent");
        }
        if let Some(a) = &self.scan.area {
            check_range("scan.area.range", a.range)?;
            check_steps("scan.area.steps", a.steps)?;
            if a.range[0] < 0.0 {
                return bad("scan.area.range", "areas must be >= 0");
            }
        }
        if let Some(w) = &self.scan.width {
            check_range("scan.width.range", w.range)?;
            check_steps("scan.width.steps", w.steps)?;
            if w.range[0] <= 0.0 {
                return bad("scan.width.range", "widths must be > 0");
            }
        }
        if let Some(d) = &self.scan.detuning {
            check_range("scan.detuning.sum", d.sum)?;
            check_range("scan.detuning.diff", d.diff)?;
            check_steps("scan.detuning.steps[0]", d.steps[0])?;
            check_steps("scan.detuning.steps[1]", d.steps[1])?;
            if d.gamma3.is_empty() {
                return bad("scan.detuning.gamma3", "must list at least one rate");
            }
            if d.gamma3.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
                return bad("scan.detuning.gamma3", "rates must be finite and >= 0");
            }
        }
        Ok(())
    }

    pub fn fano_params(&self) -> FanoParams64 {
        FanoParams::new(self.fano.q12, self.fano.q13, self.fano.q23)
    }

    pub fn pulses(&self) -> PulseTriple64 {
        PulseTriple64::new(
            self.pulses.pump.shape(),
            self.pulses.stokes.shape(),
            self.pulses.control.shape(),
        )
    }

    pub fn policy(&self) -> DetuningPolicy64 {
        match self.detuning {
            DetuningSection::Trap => DetuningPolicy::AutoTrap,
            DetuningSection::Static { delta1, delta2 } => DetuningPolicy::Static { delta1, delta2 },
        }
    }

    pub fn system(&self) -> System {
        let pulses = self.pulses();
        let g = &self.grid;
        let grid = window_for(&pulses, g.window, g.t_span)
            .with_tol(g.tolerance)
            .with_samples(g.samples);
        System {
            fano: self.fano_params(),
            pulses,
            policy: self.policy(),
            grid,
            t_span: g.t_span,
            initial: AmplitudeVector64::basis(g.initial_state - 1),
        }
    }
}

/// `[-s, s]` with `s` from [`PulseTriple64::span_with`], or the explicit window.
pub fn window_for(pulses: &PulseTriple64, window: Option<[f64; 2]>, t_span: f64) -> TimeGrid64 {
    match window {
        Some([a, b]) => TimeGrid::new(a, b),
        None => TimeGrid::symmetric(pulses.span_with(t_span).unwrap_or(1.0)),
    }
}

fn check_range(field: &str, r: [f64; 2]) -> Result<(), RunError> {
    if r[0].is_finite() && r[1].is_finite() && r[0] < r[1] {
        Ok(())
    } else {
        Err(RunError::Config(format!(
            "{field}: need finite [lo, hi] with lo < hi"
        )))
    }
}

fn check_steps(field: &str, n: usize) -> Result<(), RunError> {
    if n >= 2 {
        Ok(())
    } else {
        Err(RunError::Config(format!("{field}: must be >= 2")))
    }
}

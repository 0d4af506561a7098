//! Diagnostics for one configuration, serialized as JSON. The schema is
//! documented in `docs/report-schema.md`.

use serde::Serialize;
use tripod_core::analytic::{adiabaticity_window, landau_zener_conditions, transfer_asymptotics};
use tripod_core::{
    assemble_hamiltonian, commutator_defect, eigen_split, mixing_angles, trapping_detunings,
    PulseShape, TripodError,
};

use crate::config::SystemConfig;
use crate::error::RunError;

pub const SCHEMA_VERSION: u32 = 1;

/// Nodes used for the time extrema and the crossing search.
const REPORT_NODES: usize = 2001;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Report {
    pub schema_version: u32,
    pub fano: [f64; 3],
    pub transfer_asymptotics: &'static str,
    pub window: [f64; 2],
    pub peak: PeakDiagnostics,
    pub extrema: Extrema,
    pub adiabaticity_window: Option<WindowReport>,
    pub landau_zener: Option<CrossingReport>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PeakDiagnostics {
    pub t: f64,
    pub rates: [f64; 3],
    pub trapping_detunings: [f64; 2],
    pub eigenvalues_a: [f64; 3],
    pub eigenvalues_b: [f64; 3],
    /// `[re, im]` pairs; the last one is the decaying eigenvalue.
    pub eigenvalues_h: [[f64; 2]; 3],
    pub theta: f64,
    pub phi: f64,
    pub chi: f64,
    /// `|[A, B]|_F` with the configured detunings.
    pub commutator_defect: f64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Extrema {
    pub max_total_rate: f64,
    pub delta1_trap_range: [f64; 2],
    pub delta2_trap_range: [f64; 2],
    /// Smallest `|lambda1 - lambda2|` of the non-decaying pair.
    pub min_trapped_splitting: f64,
    pub max_commutator_defect: f64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct WindowReport {
    pub tau: f64,
    pub width: f64,
    pub gamma3: f64,
    /// Bounds on `gamma3 T`.
    pub lower: f64,
    pub upper: f64,
    pub gamma3_t: f64,
    pub inside: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CrossingReport {
    pub hab_identically_zero: bool,
    pub crossing_time: Option<f64>,
    pub coupling_sq: f64,
    pub sweep_half_rate: f64,
    pub landau_zener_ratio: f64,
    pub nonadiabatic_max: f64,
    pub gap_min: f64,
    pub worst_ratio: f64,
}

pub fn run_report(cfg: &SystemConfig) -> Result<Report, RunError> {
    let sys = cfg.system();
    let (q, p) = (sys.fano, sys.pulses);
    let (t0, t1) = (sys.grid.t0, sys.grid.t1);
    let mut notes = Vec::new();

    let nodes: Vec<f64> = crate::scan::linspace([t0, t1], REPORT_NODES);
    let mut t_peak = nodes[0];
    let mut max_total = f64::NEG_INFINITY;
    let mut d1r = [f64::INFINITY, f64::NEG_INFINITY];
    let mut d2r = [f64::INFINITY, f64::NEG_INFINITY];
    let mut min_split = f64::INFINITY;
    let mut max_defect = 0.0f64;
    for &t in &nodes {
        let r = p.evaluate(t);
        if r.total() > max_total {
            max_total = r.total();
            t_peak = t;
        }
        let d = trapping_detunings(&q, &r);
        d1r = [d1r[0].min(d.delta1), d1r[1].max(d.delta1)];
        d2r = [d2r[0].min(d.delta2), d2r[1].max(d.delta2)];
        let s = eigen_split(&q, &r)?;
        min_split = min_split.min((s.lam_a[0] - s.lam_a[1]).abs());
        let h = assemble_hamiltonian(&q, &r, &sys.policy.detunings(&q, &r));
        max_defect = max_defect.max(commutator_defect(&h));
    }

    let r = p.evaluate(t_peak);
    let trap = trapping_detunings(&q, &r);
    let split = eigen_split(&q, &r)?;
    let m = mixing_angles(&q, &r);
    let h = assemble_hamiltonian(&q, &r, &sys.policy.detunings(&q, &r));
    let peak = PeakDiagnostics {
        t: t_peak,
        rates: r.rates(),
        trapping_detunings: [trap.delta1, trap.delta2],
        eigenvalues_a: split.lam_a,
        eigenvalues_b: split.lam_b,
        eigenvalues_h: split.lam_h.map(|z| [z.re, z.im]),
        theta: m.theta,
        phi: m.phi,
        chi: m.chi,
        commutator_defect: commutator_defect(&h),
    };

    let adiabaticity = match (p.pump, p.stokes, p.control) {
        (
            PulseShape::Gaussian {
                center: cp,
                width: wp,
                ..
            },
            PulseShape::Gaussian {
                center: cs,
                width: ws,
                ..
            },
            PulseShape::Constant { gamma: g3 },
        ) if wp == ws => {
            let tau = 0.5 * (cp - cs);
            let w = adiabaticity_window(&q, g3, tau, wp)?;
            Some(WindowReport {
                tau,
                width: wp,
                gamma3: g3,
                lower: w.lower,
                upper: w.upper,
                gamma3_t: w.gamma3_t,
                inside: w.contains(w.gamma3_t),
            })
        }
        _ => {
            notes.push("adiabaticity window needs Gaussian pump and Stokes of equal width and a constant control".into());
            None
        }
    };

    let crossing = match landau_zener_conditions(&q, &p, (t0, t1), REPORT_NODES) {
        Ok(d) => {
            if d.hab_identically_zero {
                notes.push("hab identically zero (q13 = q23): no Landau-Zener crossing".into());
            }
            Some(CrossingReport {
                hab_identically_zero: d.hab_identically_zero,
                crossing_time: d.t0,
                coupling_sq: d.coupling_sq,
                sweep_half_rate: d.sweep_half_rate,
                landau_zener_ratio: d.landau_zener_ratio(),
                nonadiabatic_max: d.nonadiabatic_max,
                gap_min: d.gap_min,
                worst_ratio: d.worst_ratio,
            })
        }
        Err(TripodError::NoCrossing { .. }) => {
            notes.push("haa - hbb keeps one sign over the window: no level crossing".into());
            None
        }
        Err(e) => return Err(e.into()),
    };

    Ok(Report {
        schema_version: SCHEMA_VERSION,
        fano: [q.q12, q.q13, q.q23],
        transfer_asymptotics: transfer_asymptotics(&q).name(),
        window: [t0, t1],
        peak,
        extrema: Extrema {
            max_total_rate: max_total,
            delta1_trap_range: d1r,
            delta2_trap_range: d2r,
            min_trapped_splitting: min_split,
            max_commutator_defect: max_defect,
        },
        adiabaticity_window: adiabaticity,
        landau_zener: crossing,
        notes,
    })
}

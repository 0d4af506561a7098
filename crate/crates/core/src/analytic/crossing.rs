use crate::error::{Result, TripodError};
use crate::model::FanoParams;
use crate::pulses::PulseTriple;
use crate::rotated::{crossing_detuning, rotated_hamiltonian};
use crate::scalar::Real;

/// Adiabaticity diagnostics for the transfer 1 -> 2 along `Phi1'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingDiagnostics<T> {
    /// Crossing time `haa(t0) = hbb(t0)`; `None` when `hab` vanishes identically.
    pub t0: Option<T>,
    pub hab_identically_zero: bool,
    /// `hab(t0)^2`.
    pub coupling_sq: T,
    /// `|d/dt (hbb - haa)|(t0) / 2`.
    pub sweep_half_rate: T,
    /// Largest `|theta_dot cos(phi)|` over the window.
    pub nonadiabatic_max: T,
    /// Smallest `sqrt((haa - hcc)^2 + G^2/4)` over the window.
    pub gap_min: T,
    /// Largest pointwise ratio of the two quantities above.
    pub worst_ratio: T,
}

impl<T: Real> CrossingDiagnostics<T> {
    /// `hab(t0)^2 / (|d/dt (hbb - haa)|/2)`; zero when `hab` vanishes.
    pub fn landau_zener_ratio(&self) -> T {
        if self.hab_identically_zero || self.coupling_sq == T::zero() {
            T::zero()
        } else {
            self.coupling_sq / self.sweep_half_rate
        }
    }
}

/// Scans `[t_start, t_end]` on `points` uniform nodes, locates the sign
/// change of `haa - hbb` and refines it by bisection.
pub fn landau_zener_conditions<T: Real>(
    q: &FanoParams<T>,
    p: &PulseTriple<T>,
    window: (T, T),
    points: usize,
) -> Result<CrossingDiagnostics<T>> {
    let (ta, tb) = window;
    if !(ta < tb) || points < 2 {
        return Err(TripodError::InvalidInput(
            "crossing scan needs t0 < t1 and at least two points".into(),
        ));
    }
    let step = (tb - ta) / T::from_usize(points - 1).unwrap();
    let nodes: Vec<T> = (0..points)
        .map(|k| ta + step * T::from_usize(k).unwrap())
        .collect();

    let mut nonadiabatic_max = T::zero();
    let mut gap_min = T::infinity();
    let mut worst_ratio = T::zero();
    let mut prev: Option<(T, T)> = None;
    let mut bracket = None;
    for &t in &nodes {
        let r = p.evaluate(t);
        let Ok(h) = rotated_hamiltonian(q, &r) else {
            continue;
        };
        let lhs = h.coupling_13().abs();
        let d = h.haa - h.hcc;
        let rhs = (d * d + T::lit(0.25) * h.gamma_total * h.gamma_total).sqrt();
        nonadiabatic_max = nonadiabatic_max.max(lhs);
        gap_min = gap_min.min(rhs);
        if rhs > T::zero() {
            worst_ratio = worst_ratio.max(lhs / rhs);
        }
        let f = h.haa - h.hbb;
        if let Some((tp, fp)) = prev {
            if bracket.is_none() && (fp == T::zero() || fp.signum() != f.signum()) {
                bracket = Some((tp, fp, t));
            }
        }
        prev = Some((t, f));
    }

    let hab_identically_zero = q.q13 == q.q23;
    if hab_identically_zero {
        return Ok(CrossingDiagnostics {
            t0: None,
            hab_identically_zero,
            coupling_sq: T::zero(),
            sweep_half_rate: T::zero(),
            nonadiabatic_max,
            gap_min,
            worst_ratio,
        });
    }

    let Some((mut lo, mut flo, mut hi)) = bracket else {
        return Err(TripodError::NoCrossing {
            t0: ta.to_f64().unwrap_or(f64::NAN),
            t1: tb.to_f64().unwrap_or(f64::NAN),
        });
    };
    let f_at = |t: T| crossing_detuning(q, &p.evaluate(t)).map(|(v, _)| -v);
    if flo != T::zero() {
        for _ in 0..200 {
            let mid = (lo + hi) / T::lit(2.0);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = f_at(mid)?;
            if fm == T::zero() {
                lo = mid;
                hi = mid;
                break;
            }
            if fm.signum() == flo.signum() {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
    } else {
        hi = lo;
    }
    let t0 = (lo + hi) / T::lit(2.0);
    let r0 = p.evaluate(t0);
    let h0 = rotated_hamiltonian(q, &r0)?;
    let (_, rate) = crossing_detuning(q, &r0)?;
    Ok(CrossingDiagnostics {
        t0: Some(t0),
        hab_identically_zero,
        coupling_sq: h0.hab * h0.hab,
        sweep_half_rate: rate.abs() / T::lit(2.0),
        nonadiabatic_max,
        gap_min,
        worst_ratio,
    })
}

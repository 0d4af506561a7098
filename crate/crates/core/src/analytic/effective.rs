//! Two-state model left after adiabatically eliminating a strongly ionized
//! control state.

use crate::error::{Result, TripodError};
use crate::model::{Detunings, FanoParams, RateSnapshot};
use crate::ode::{integrate, StepControl, StepStats};
use crate::propagator::TimeGrid;
use crate::scalar::{c, half, Real, C};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveTwoState<T> {
    /// `G1 q13^2`.
    pub g1ae: T,
    /// `G2 q23^2`.
    pub g2ae: T,
    /// `(q12 - q13 - q23) / (q13 q23)`.
    pub qae: T,
    /// `delta2 - delta1 + S2 - S1 + G2 q23 - G1 q13`.
    pub dae: T,
}

impl<T: Real> EffectiveTwoState<T> {
    /// `1/2 [[-i G1, -sqrt(G1 G2)(q + i)], [-sqrt(G1 G2)(q + i), 2D - i G2]]`.
    pub fn hamiltonian(&self) -> [[C<T>; 2]; 2] {
        let h = half::<T>();
        let s = (self.g1ae * self.g2ae).max(T::zero()).sqrt();
        let off = c(-h * s * self.qae, -h * s);
        [
            [c(T::zero(), -h * self.g1ae), off],
            [off, c(self.dae, -h * self.g2ae)],
        ]
    }
}

pub fn effective_two_state<T: Real>(
    q: &FanoParams<T>,
    r: &RateSnapshot<T>,
    d: &Detunings<T>,
) -> Result<EffectiveTwoState<T>> {
    let prod = q.q13 * q.q23;
    if prod == T::zero() {
        return Err(TripodError::DegenerateDenominator(
            "q13 q23 = 0 in the effective Fano parameter",
        ));
    }
    Ok(EffectiveTwoState {
        g1ae: r.g1 * q.q13 * q.q13,
        g2ae: r.g2 * q.q23 * q.q23,
        qae: (q.q12 - q.q13 - q.q23) / prod,
        dae: d.d2() - d.d1() + r.g2 * q.q23 - r.g1 * q.q13,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveRecord<T> {
    pub t: T,
    pub p1: T,
    pub p2: T,
    pub pi: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveTrajectory<T: Real> {
    pub records: Vec<EffectiveRecord<T>>,
    pub final_state: [C<T>; 2],
    pub stats: StepStats,
}

impl<T: Real> EffectiveTrajectory<T> {
    pub fn last(&self) -> &EffectiveRecord<T> {
        self.records
            .last()
            .expect("trajectory has at least one record")
    }
}

/// Integrates `i dC/dt = H_ae(t) C` for the time series `series`.
pub fn propagate_effective<T: Real, F: Fn(T) -> EffectiveTwoState<T>>(
    series: F,
    init: [C<T>; 2],
    grid: &TimeGrid<T>,
) -> Result<EffectiveTrajectory<T>> {
    let n0 = init[0].norm_sqr() + init[1].norm_sqr();
    if (n0 - T::one()).abs() > T::lit(1e-9).max(T::epsilon() * T::lit(64.0)) {
        return Err(TripodError::InvalidInput(format!(
            "initial state must be normalized, |C|^2 = {n0}"
        )));
    }
    if !(grid.t0.is_finite() && grid.t1.is_finite() && grid.t0 < grid.t1) {
        return Err(TripodError::InvalidInput("need finite t0 < t1".into()));
    }
    let minus_i = c(T::zero(), -T::one());
    let rhs = |t: T, y: &[C<T>; 2]| {
        let h = series(t).hamiltonian();
        [
            (h[0][0] * y[0] + h[0][1] * y[1]) * minus_i,
            (h[1][0] * y[0] + h[1][1] * y[1]) * minus_i,
        ]
    };
    let mut records = Vec::with_capacity(grid.samples);
    let (final_state, stats) = integrate(
        rhs,
        init,
        grid.t0,
        &grid.sample_times(),
        &StepControl::new(grid.tol),
        |t, y| {
            let (p1, p2) = (y[0].norm_sqr(), y[1].norm_sqr());
            records.push(EffectiveRecord {
                t,
                p1,
                p2,
                pi: T::one() - p1 - p2,
            });
        },
    )?;
    Ok(EffectiveTrajectory {
        records,
        final_state,
        stats,
    })
}

//! Embedded Runge-Kutta 5(4) (Dormand-Prince) for small complex systems.

use num_traits::Zero;

use crate::error::{Result, TripodError};
use crate::scalar::{Real, C};

/// Step-size control for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl<T> {
    /// Bound on the local error estimate per step, in the max-modulus norm.
    pub tol: T,
    /// Upper bound on the step; `None` for no bound beyond the sampling interval.
    pub h_max: Option<T>,
    pub max_steps: usize,
}

impl<T: Real> StepControl<T> {
    pub fn new(tol: T) -> Self {
        Self {
            tol,
            h_max: None,
            max_steps: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
}

// Dormand-Prince tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn combo<T: Real, const N: usize>(y: &[C<T>; N], h: T, terms: &[(f64, &[C<T>; N])]) -> [C<T>; N] {
    let mut out = *y;
    for (w, k) in terms {
        let s = h * T::lit(*w);
        for i in 0..N {
            out[i] = out[i] + k[i] * s;
        }
    }
    out
}

/// Integrates `dy/dt = rhs(t, y)` from `t0`, calling `on_sample` at every
/// entry of `times` (ascending, all `>= t0`). Steps are clipped to land on
/// the sample times exactly. Returns the state at the last sample.
pub fn integrate<T, const N: usize, F, O>(
    mut rhs: F,
    y0: [C<T>; N],
    t0: T,
    times: &[T],
    ctl: &StepControl<T>,
    mut on_sample: O,
) -> Result<([C<T>; N], StepStats)>
where
    T: Real,
    F: FnMut(T, &[C<T>; N]) -> [C<T>; N],
    O: FnMut(T, &[C<T>; N]),
{
    if !(ctl.tol > T::zero()) {
        return Err(TripodError::InvalidInput(format!(
            "tolerance must be positive, got {}",
            ctl.tol
        )));
    }
    let mut stats = StepStats::default();
    let mut t = t0;
    let mut y = y0;
    let mut k1 = rhs(t, &y);
    let span = times.last().map(|&e| e - t0).unwrap_or_else(T::zero);
    let mut h = if span > T::zero() {
        span / T::lit(1000.0)
    } else {
        T::one()
    };
    if let Some(hm) = ctl.h_max {
        h = h.min(hm);
    }
    let safety = T::lit(0.9);
    let order_exp = T::lit(-0.2);

    for &target in times {
        if target < t {
            return Err(TripodError::InvalidInput(format!(
                "sample time {target} precedes {t}"
            )));
        }
        while t < target {
            if stats.accepted + stats.rejected >= ctl.max_steps {
                return Err(TripodError::TooManySteps {
                    steps: ctl.max_steps,
                    t: t.to_f64().unwrap_or(f64::NAN),
                });
            }
            let floor = T::epsilon() * T::lit(16.0) * t.abs().max(T::one());
            let remaining = target - t;
            let clipped = h >= remaining;
            let step = if clipped { remaining } else { h };
            if step < floor && !clipped {
                return Err(TripodError::StepSizeUnderflow {
                    t: t.to_f64().unwrap_or(f64::NAN),
                });
            }

            let k2 = rhs(t + step * T::lit(C2), &combo(&y, step, &[(A21, &k1)]));
            let k3 = rhs(
                t + step * T::lit(C3),
                &combo(&y, step, &[(A31, &k1), (A32, &k2)]),
            );
            let k4 = rhs(
                t + step * T::lit(C4),
                &combo(&y, step, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
            );
            let k5 = rhs(
                t + step * T::lit(C5),
                &combo(&y, step, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            );
            let k6 = rhs(
                t + step,
                &combo(
                    &y,
                    step,
                    &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
                ),
            );
            let y_new = combo(
                &y,
                step,
                &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
            );
            let k7 = rhs(t + step, &y_new);

            let zero = [C::zero(); N];
            let err = combo(
                &zero,
                step,
                &[
                    (E1, &k1),
                    (E3, &k3),
                    (E4, &k4),
                    (E5, &k5),
                    (E6, &k6),
                    (E7, &k7),
                ],
            );
            let err_norm = err.iter().fold(T::zero(), |m, e| m.max(e.norm())) / ctl.tol;

            if !err_norm.is_finite() {
                h = step / T::lit(10.0);
                stats.rejected += 1;
                continue;
            }

            if err_norm <= T::one() {
                stats.accepted += 1;
                t = if clipped { target } else { t + step };
                y = y_new;
                k1 = k7;
                let grow = if err_norm == T::zero() {
                    T::lit(5.0)
                } else {
                    (safety * err_norm.powf(order_exp))
                        .min(T::lit(5.0))
                        .max(T::lit(0.2))
                };
                // A step shortened to hit a sample says nothing about the
                // natural step length, so do not let it shrink h.
                let proposed = step * grow;
                h = if clipped { h.max(proposed) } else { proposed };
            } else {
                stats.rejected += 1;
                let shrink = (safety * err_norm.powf(order_exp)).max(T::lit(0.2));
                h = step * shrink;
            }
            if let Some(hm) = ctl.h_max {
                h = h.min(hm);
            }
        }
        on_sample(t, &y);
    }
    Ok((y, stats))
}

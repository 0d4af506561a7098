//! Time propagation of `i dC/dt = H(t) C` in the bare basis.

use num_traits::Zero;

use crate::error::{Result, TripodError};
use crate::matrix::ComplexMatrix3;
use crate::model::{assemble_hamiltonian, trapping_detunings, Detunings, FanoParams};
use crate::ode::{integrate, StepControl, StepStats};
use crate::pulses::PulseTriple;
use crate::scalar::{c, Real, C};

/// Default local error bound per step.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default number of uniformly spaced records.
pub const DEFAULT_SAMPLES: usize = 512;

/// Bound-state amplitudes `(C1, C2, C3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeVector<T: Real>(pub [C<T>; 3]);

impl<T: Real> AmplitudeVector<T> {
    /// All population in bare state `k` (0-based).
    pub fn basis(k: usize) -> Self {
        let mut v = [C::zero(); 3];
        v[k] = c(T::one(), T::zero());
        Self(v)
    }

    pub fn norm_sqr(&self) -> T {
        self.0.iter().fold(T::zero(), |a, z| a + z.norm_sqr())
    }

    pub fn populations(&self) -> Populations<T> {
        populations(self)
    }

    pub fn scaled(&self, z: C<T>) -> Self {
        Self(self.0.map(|x| x * z))
    }
}

/// Bound-state populations and the ionization complement.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Populations<T> {
    pub p1: T,
    pub p2: T,
    pub p3: T,
    pub pi: T,
}

impl<T: Real> Populations<T> {
    pub fn as_array(&self) -> [T; 4] {
        [self.p1, self.p2, self.p3, self.pi]
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .fold(T::zero(), |m, (a, b)| m.max((*a - b).abs()))
    }
}

pub fn populations<T: Real>(c: &AmplitudeVector<T>) -> Populations<T> {
    let [p1, p2, p3] = c.0.map(|z| z.norm_sqr());
    Populations {
        p1,
        p2,
        p3,
        pi: T::one() - p1 - p2 - p3,
    }
}

/// How the detunings are chosen along the propagation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DetuningPolicy<T> {
    /// Trapping detunings re-evaluated at every instant.
    AutoTrap,
    /// Fixed two-photon detunings, Stark shifts zero.
    Static { delta1: T, delta2: T },
}

impl<T: Real> DetuningPolicy<T> {
    pub fn detunings(&self, q: &FanoParams<T>, r: &crate::model::RateSnapshot<T>) -> Detunings<T> {
        match *self {
            Self::AutoTrap => trapping_detunings(q, r),
            Self::Static { delta1, delta2 } => Detunings::new(delta1, delta2),
        }
    }
}

/// Integration window, tolerance and number of uniformly spaced records
/// (both end points included).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid<T> {
    pub t0: T,
    pub t1: T,
    pub tol: T,
    pub samples: usize,
}

impl<T: Real> TimeGrid<T> {
    pub fn new(t0: T, t1: T) -> Self {
        Self {
            t0,
            t1,
            tol: T::lit(DEFAULT_TOL),
            samples: DEFAULT_SAMPLES,
        }
    }

    /// Symmetric window `[-span, span]`.
    pub fn symmetric(span: T) -> Self {
        Self::new(-span, span)
    }

    pub fn with_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn sample_times(&self) -> Vec<T> {
        if self.samples <= 1 {
            return vec![self.t1];
        }
        let n = self.samples - 1;
        let dt = (self.t1 - self.t0) / T::from_usize(n).unwrap();
        (0..=n)
            .map(|k| {
                if k == n {
                    self.t1
                } else {
                    self.t0 + dt * T::from_usize(k).unwrap()
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if !(self.t0.is_finite() && self.t1.is_finite() && self.t0 < self.t1) {
            return Err(TripodError::InvalidInput(format!(
                "need finite t0 < t1, got [{}, {}]",
                self.t0, self.t1
            )));
        }
        if !(self.tol > T::zero()) {
            return Err(TripodError::InvalidInput(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Record<T> {
    pub t: T,
    pub p1: T,
    pub p2: T,
    pub p3: T,
    pub pi: T,
    /// `|C|^2 = P1 + P2 + P3`.
    pub norm: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T: Real> {
    pub records: Vec<Record<T>>,
    pub final_state: AmplitudeVector<T>,
    pub stats: StepStats,
}

impl<T: Real> Trajectory<T> {
    pub fn last(&self) -> &Record<T> {
        self.records
            .last()
            .expect("trajectory has at least one record")
    }

    pub fn final_populations(&self) -> Populations<T> {
        self.final_state.populations()
    }

    pub fn max_ionization(&self) -> T {
        self.records.iter().fold(T::zero(), |m, r| m.max(r.pi))
    }
}

/// The Hamiltonian the propagator integrates at time `t`.
pub fn hamiltonian_at<T: Real>(
    q: &FanoParams<T>,
    pulses: &PulseTriple<T>,
    policy: &DetuningPolicy<T>,
    t: T,
) -> ComplexMatrix3<T> {
    let r = pulses.evaluate(t);
    assemble_hamiltonian(q, &r, &policy.detunings(q, &r))
}

/// Amplitudes at every sample time of `grid`.
pub fn propagate_amplitudes<T: Real>(
    q: &FanoParams<T>,
    pulses: &PulseTriple<T>,
    policy: &DetuningPolicy<T>,
    init: &AmplitudeVector<T>,
    grid: &TimeGrid<T>,
) -> Result<(Vec<(T, AmplitudeVector<T>)>, StepStats)> {
    grid.validate()?;
    pulses.validate()?;
    if !q.is_finite() {
        return Err(TripodError::InvalidInput(
            "Fano parameters must be finite".into(),
        ));
    }
    let n0 = init.norm_sqr();
    if (n0 - T::one()).abs() > T::lit(1e-9).max(T::epsilon() * T::lit(64.0)) {
        return Err(TripodError::InvalidInput(format!(
            "initial state must be normalized, |C|^2 = {n0}"
        )));
    }
    let minus_i = c(T::zero(), -T::one());
    let rhs = |t: T, y: &[C<T>; 3]| {
        let h = hamiltonian_at(q, pulses, policy, t);
        h.mul_vec(y).map(|z| z * minus_i)
    };
    let times = grid.sample_times();
    let mut out = Vec::with_capacity(times.len());
    let (_, stats) = integrate(
        rhs,
        init.0,
        grid.t0,
        &times,
        &StepControl::new(grid.tol),
        |t, y| out.push((t, AmplitudeVector(*y))),
    )?;
    Ok((out, stats))
}

pub fn propagate<T: Real>(
    q: &FanoParams<T>,
    pulses: &PulseTriple<T>,
    policy: &DetuningPolicy<T>,
    init: &AmplitudeVector<T>,
    grid: &TimeGrid<T>,
) -> Result<Trajectory<T>> {
    let (samples, stats) = propagate_amplitudes(q, pulses, policy, init, grid)?;
    let final_state = samples.last().map(|s| s.1).unwrap_or(*init);
    let records = samples
        .iter()
        .map(|(t, a)| {
            let p = a.populations();
            Record {
                t: *t,
                p1: p.p1,
                p2: p.p2,
                p3: p.p3,
                pi: p.pi,
                norm: p.p1 + p.p2 + p.p3,
            }
        })
        .collect();
    Ok(Trajectory {
        records,
        final_state,
        stats,
    })
}

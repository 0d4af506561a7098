//! Mixing angles and the adiabatic / rotated bases built from them.
//!
//! `tan theta = sqrt(G1/G2)`, `tan phi = sqrt(G3/(G1+G2))` and
//! `cot 2chi = (hbb - haa) / (2 hab)`. The first two are evaluated with
//! `atan2` so one vanishing rate is handled directly; `2chi` is taken on
//! `(0, pi)`. Where a ratio is 0/0 the angle is flagged as indeterminate and
//! [`AngleTracker`] holds the previous value of the time series.

use crate::matrix::{Real3, Vec3};
use crate::model::{
    assemble_hamiltonian, eigen_split, trapping_detunings, FanoParams, RateSnapshot,
};
use crate::scalar::{sqrt0, Real, C};

/// How an angle was obtained at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AngleStatus {
    /// Ordinary ratio of nonzero quantities.
    #[default]
    Regular,
    /// Denominator vanished but the numerator fixes the limit (`chi` in {0, pi/2}).
    Limit,
    /// 0/0; the reported value is a placeholder or the previous one.
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MixingAngles<T> {
    pub theta: T,
    pub phi: T,
    pub chi: T,
    pub theta_status: AngleStatus,
    pub phi_status: AngleStatus,
    pub chi_status: AngleStatus,
}

impl<T: Real> MixingAngles<T> {
    pub fn new(theta: T, phi: T, chi: T) -> Self {
        Self {
            theta,
            phi,
            chi,
            ..Default::default()
        }
    }

    pub fn is_determinate(&self) -> bool {
        self.theta_status != AngleStatus::Indeterminate
            && self.phi_status != AngleStatus::Indeterminate
            && self.chi_status != AngleStatus::Indeterminate
    }
}

/// Numerator and denominator of `cot 2chi`, both free of the `1/(G1+G2)`
/// factor so they stay finite when the pump and Stokes rates vanish.
pub(crate) fn cot_two_chi_parts<T: Real>(q: &FanoParams<T>, r: &RateSnapshot<T>) -> (T, T) {
    let g12 = r.g1 + r.g2;
    let dq = q.q13 - q.q23;
    let lin = (q.q13 - q.q12) * r.g1 + (q.q23 - q.q12) * r.g2;
    let num = r.g3 * dq * (r.g1 - r.g2) + g12 * lin;
    let s = sqrt0(r.g1 * r.g2 * r.g3 * r.total());
    (num, T::lit(2.0) * dq * s)
}

fn same_fano_13_23<T: Real>(q: &FanoParams<T>) -> bool {
    let scale = T::one().max(q.q13.abs()).max(q.q23.abs());
    (q.q13 - q.q23).abs() <= T::lit(1e-12) * scale
}

/// Instantaneous mixing angles, with `theta, phi` in `[0, pi/2]` and `chi` in `[0, pi/2]`
/// (`2chi` in `(0, pi)`, or exactly 0 / pi in the limit cases).
pub fn mixing_angles<T: Real>(q: &FanoParams<T>, r: &RateSnapshot<T>) -> MixingAngles<T> {
    let eps = T::guard();
    let [s1, s2, s3] = r.amplitudes();
    let g12 = r.g1 + r.g2;

    let (theta, theta_status) = if g12 > eps {
        (s1.atan2(s2), AngleStatus::Regular)
    } else {
        (T::zero(), AngleStatus::Indeterminate)
    };
    let (phi, phi_status) = if r.total() > eps {
        (s3.atan2(sqrt0(g12)), AngleStatus::Regular)
    } else {
        (T::zero(), AngleStatus::Indeterminate)
    };

    let (num, den) = cot_two_chi_parts(q, r);
    let (chi, chi_status) = if same_fano_13_23(q) {
        // hab vanishes identically; the rotated states are already eigenstates.
        let status = if num.abs() > eps {
            AngleStatus::Limit
        } else {
            AngleStatus::Indeterminate
        };
        (T::zero(), status)
    } else if den.abs() > eps {
        let (y, x) = if den > T::zero() {
            (den, num)
        } else {
            (-den, -num)
        };
        (y.atan2(x) / T::lit(2.0), AngleStatus::Regular)
    } else if num > eps {
        (T::zero(), AngleStatus::Limit)
    } else if num < -eps {
        (T::FRAC_PI_2(), AngleStatus::Limit)
    } else {
        (T::zero(), AngleStatus::Indeterminate)
    };

    MixingAngles {
        theta,
        phi,
        chi,
        theta_status,
        phi_status,
        chi_status,
    }
}

/// Follows the mixing angles along a time series.
///
/// Indeterminate angles keep their previous value, and `chi` is shifted by
/// multiples of `pi/2` (the period of `cot 2chi`) to stay continuous, so it
/// may leave `[0, pi/2]`.
#[derive(Debug, Clone, Default)]
pub struct AngleTracker<T> {
    prev: Option<MixingAngles<T>>,
    warnings: usize,
}

impl<T: Real> AngleTracker<T> {
    pub fn new() -> Self {
        Self {
            prev: None,
            warnings: 0,
        }
    }

    /// Number of instants where an angle had no previous value to fall back to.
    pub fn warnings(&self) -> usize {
        self.warnings
    }

    pub fn update(&mut self, q: &FanoParams<T>, r: &RateSnapshot<T>) -> MixingAngles<T> {
        let mut m = mixing_angles(q, r);
        match self.prev {
            None => {
                if !m.is_determinate() {
                    self.warnings += 1;
                }
            }
            Some(p) => {
                if m.theta_status == AngleStatus::Indeterminate {
                    m.theta = p.theta;
                }
                if m.phi_status == AngleStatus::Indeterminate {
                    m.phi = p.phi;
                }
                if m.chi_status == AngleStatus::Indeterminate {
                    m.chi = p.chi;
                } else {
                    let period = T::FRAC_PI_2();
                    let k = ((p.chi - m.chi) / period).round();
                    m.chi = m.chi + k * period;
                }
            }
        }
        self.prev = Some(m);
        m
    }
}

/// The adiabatic states `[Phi1, Phi2, Phi3]` as bare-basis vectors.
pub fn adiabatic_states<T: Real>(m: &MixingAngles<T>) -> [Vec3<T>; 3] {
    let (st, ct) = m.theta.sin_cos();
    let (sp, cp) = m.phi.sin_cos();
    let (sx, cx) = m.chi.sin_cos();
    [
        [ct * cx - st * sp * sx, -st * cx - ct * sp * sx, cp * sx],
        [ct * sx + st * sp * cx, -st * sx + ct * sp * cx, -cp * cx],
        [st * cp, ct * cp, sp],
    ]
}

/// Eigenvalues of `H` ordered as `[Phi1, Phi2, Phi3]` under the trapping
/// conditions.
///
/// `a + sqrt(a^2 + b)` belongs to `Phi1` or `Phi2` depending on the sign of
/// `q13 - q23` with `2chi` on `(0, pi)`; the pairing is read off the
/// expectation value of `A` in `Phi1`.
pub fn adiabatic_eigenvalues<T: Real>(
    q: &FanoParams<T>,
    r: &RateSnapshot<T>,
    m: &MixingAngles<T>,
) -> crate::error::Result<[C<T>; 3]> {
    let split = eigen_split(q, r)?;
    let h = assemble_hamiltonian(q, r, &trapping_detunings(q, r));
    let a = h.re();
    let phi1 = adiabatic_states(m)[0];
    let mut expect = T::zero();
    for i in 0..3 {
        for j in 0..3 {
            expect = expect + phi1[i] * a[i][j] * phi1[j];
        }
    }
    let [l1, l2, l3] = split.lam_h;
    if (expect - l1.re).abs() <= (expect - l2.re).abs() {
        Ok([l1, l2, l3])
    } else {
        Ok([l2, l1, l3])
    }
}

/// Rotation taking rotated-basis amplitudes `(C1', C2', C3)` to bare ones.
/// Columns are `Phi1'`, `Phi2'` and `Phi3`.
pub fn rotation_matrix<T: Real>(theta: T, phi: T) -> Real3<T> {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [
        [ct, st * sp, st * cp],
        [-st, ct * sp, ct * cp],
        [T::zero(), -cp, sp],
    ]
}

/// Time derivative of [`rotation_matrix`] given the angle rates.
pub fn rotation_matrix_rate<T: Real>(theta: T, phi: T, theta_dot: T, phi_dot: T) -> Real3<T> {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let z = T::zero();
    [
        [
            -st * theta_dot,
            ct * sp * theta_dot + st * cp * phi_dot,
            ct * cp * theta_dot - st * sp * phi_dot,
        ],
        [
            -ct * theta_dot,
            -st * sp * theta_dot + ct * cp * phi_dot,
            -st * cp * theta_dot - ct * sp * phi_dot,
        ],
        [z, sp * phi_dot, cp * phi_dot],
    ]
}

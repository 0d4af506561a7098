//! The Hamiltonian in the `(Phi1', Phi2', Phi3)` basis, `H' = R^T H R - i R^T dR/dt`.

use crate::angles::{cot_two_chi_parts, mixing_angles};
use crate::error::{Result, TripodError};
use crate::matrix::ComplexMatrix3;
use crate::model::{FanoParams, RateSnapshot};
use crate::scalar::{c, half, sqrt0, Real};

/// Entries of `H'` under the trapping conditions.
///
/// The static part is `[[haa, hab, 0], [hab, hbb, 0], [0, 0, hcc - iG/2]]`;
/// the nonadiabatic couplings are `theta_dot sin(phi)` (1'-2'),
/// `theta_dot cos(phi)` (1'-3) and `phi_dot` (2'-3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatedHamiltonian<T> {
    pub haa: T,
    pub hbb: T,
    pub hcc: T,
    pub hab: T,
    pub theta: T,
    pub phi: T,
    pub theta_dot: T,
    pub phi_dot: T,
    pub gamma_total: T,
}

impl<T: Real> RotatedHamiltonian<T> {
    pub fn coupling_12(&self) -> T {
        self.theta_dot * self.phi.sin()
    }

    pub fn coupling_13(&self) -> T {
        self.theta_dot * self.phi.cos()
    }

    /// `cot 2chi` from the rotated entries; `None` when `hab` is zero.
    pub fn cot_two_chi(&self) -> Option<T> {
        if self.hab == T::zero() {
            None
        } else {
            Some((self.hbb - self.haa) / (T::lit(2.0) * self.hab))
        }
    }

    /// `R^T H R` alone.
    pub fn static_matrix(&self) -> ComplexMatrix3<T> {
        let z = T::zero();
        let mut m = ComplexMatrix3::from_real(&[
            [self.haa, self.hab, z],
            [self.hab, self.hbb, z],
            [z, z, self.hcc],
        ]);
        m[(2, 2)] = c(self.hcc, -half::<T>() * self.gamma_total);
        m
    }

    /// Full `H'` including the nonadiabatic couplings.
    pub fn matrix(&self) -> ComplexMatrix3<T> {
        let mut m = self.static_matrix();
        let i = c(T::zero(), T::one());
        let a = self.coupling_12();
        let b = self.coupling_13();
        let p = self.phi_dot;
        m[(0, 1)] = m[(0, 1)] - i * a;
        m[(1, 0)] = m[(1, 0)] + i * a;
        m[(0, 2)] = -i * b;
        m[(2, 0)] = i * b;
        m[(1, 2)] = i * p;
        m[(2, 1)] = -i * p;
        m
    }
}

/// Time derivative of `theta`, from `tan theta = sqrt(G1/G2)`.
pub fn theta_rate<T: Real>(r: &RateSnapshot<T>) -> T {
    let g12 = r.g1 + r.g2;
    let p = r.g1 * r.g2;
    if g12 <= T::guard() || p <= T::zero() {
        return T::zero();
    }
    (r.dg1 * r.g2 - r.g1 * r.dg2) / (T::lit(2.0) * p.sqrt() * g12)
}

/// Time derivative of `phi`, from `tan phi = sqrt(G3/(G1+G2))`.
pub fn phi_rate<T: Real>(r: &RateSnapshot<T>) -> T {
    let g12 = r.g1 + r.g2;
    let dg12 = r.dg1 + r.dg2;
    let p = r.g3 * g12;
    if r.total() <= T::guard() || p <= T::zero() {
        return T::zero();
    }
    (r.dg3 * g12 - r.g3 * dg12) / (T::lit(2.0) * p.sqrt() * r.total())
}

pub fn rotated_hamiltonian<T: Real>(
    q: &FanoParams<T>,
    r: &RateSnapshot<T>,
) -> Result<RotatedHamiltonian<T>> {
    let g12 = r.g1 + r.g2;
    if g12 <= T::guard() {
        return Err(TripodError::DegenerateDenominator(
            "G1 + G2 = 0 in the rotated Hamiltonian",
        ));
    }
    let h = half::<T>();
    let lin13 = q.q13 * r.g1 + q.q23 * r.g2;
    let lin31 = q.q23 * r.g1 + q.q13 * r.g2;
    let haa = (r.g3 * lin31 + q.q12 * g12 * g12 - g12 * lin13) / (T::lit(2.0) * g12);
    let hbb = r.g3 * lin13 / (T::lit(2.0) * g12);
    let hcc = -h * lin13;
    let s = sqrt0(r.g1 * r.g2 * r.g3 * r.total());
    let hab = (q.q13 - q.q23) * s / (T::lit(2.0) * g12);
    let m = mixing_angles(q, r);
    Ok(RotatedHamiltonian {
        haa,
        hbb,
        hcc,
        hab,
        theta: m.theta,
        phi: m.phi,
        theta_dot: theta_rate(r),
        phi_dot: phi_rate(r),
        gamma_total: r.total(),
    })
}

/// `hbb - haa` and its time derivative.
pub fn crossing_detuning<T: Real>(q: &FanoParams<T>, r: &RateSnapshot<T>) -> Result<(T, T)> {
    let g12 = r.g1 + r.g2;
    if g12 <= T::guard() {
        return Err(TripodError::DegenerateDenominator(
            "G1 + G2 = 0 in hbb - haa",
        ));
    }
    // hbb - haa = N / (2 (G1 + G2)), N the numerator of cot 2chi.
    let (num, _) = cot_two_chi_parts(q, r);
    let dq = q.q13 - q.q23;
    let lin = (q.q13 - q.q12) * r.g1 + (q.q23 - q.q12) * r.g2;
    let dlin = (q.q13 - q.q12) * r.dg1 + (q.q23 - q.q12) * r.dg2;
    let dg12 = r.dg1 + r.dg2;
    let dnum = r.dg3 * dq * (r.g1 - r.g2) + r.g3 * dq * (r.dg1 - r.dg2) + dg12 * lin + g12 * dlin;
    let two = T::lit(2.0);
    let value = num / (two * g12);
    let rate = (dnum * g12 - num * dg12) / (two * g12 * g12);
    Ok((value, rate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::rotation_matrix;
    use crate::model::{assemble_hamiltonian, trapping_detunings};
    use approx::assert_relative_eq;

    fn fig3_peak() -> RateSnapshot<f64> {
        let g = (-0.25f64).exp();
        // Eq-31 shapes at t = 0, tau = 0.5, T = 1.
        RateSnapshot {
            g1: g,
            g2: g,
            g3: 3.0,
            dg1: g,
            dg2: -g,
            dg3: 0.0,
        }
    }

    #[test]
    fn equal_13_23_kills_hab() {
        let h = rotated_hamiltonian(&FanoParams::new(2.0, 5.0, 5.0), &fig3_peak()).unwrap();
        assert_eq!(h.hab, 0.0);
    }

    #[test]
    fn all_equal_fano_degenerates_rotated_pair() {
        let r = RateSnapshot::frozen(0.37, 1.4, 2.9);
        let h = rotated_hamiltonian(&FanoParams::equal(4.0), &r).unwrap();
        assert_relative_eq!(h.haa, h.hbb, epsilon = 1e-13);
        assert_eq!(h.hab, 0.0);
    }

    #[test]
    fn similarity_transform_reproduces_static_part() {
        let q = FanoParams::new(2.0, 5.0, 5.5);
        let r = fig3_peak();
        let hm = assemble_hamiltonian(&q, &r, &trapping_detunings(&q, &r));
        let rot = rotated_hamiltonian(&q, &r).unwrap();
        let rr = ComplexMatrix3::from_real(&rotation_matrix(rot.theta, rot.phi));
        let similar = rr.transpose() * hm * rr;
        let diff = (similar - rot.static_matrix()).frobenius();
        assert!(diff < 1e-10, "diff = {diff:e}");
    }

    #[test]
    fn degenerate_denominator_is_reported() {
        let err = rotated_hamiltonian(
            &FanoParams::equal(1.0),
            &RateSnapshot::frozen(0.0, 0.0, 1.0),
        );
        assert!(matches!(err, Err(TripodError::DegenerateDenominator(_))));
    }

    #[test]
    fn crossing_rate_matches_finite_difference() {
        let q = FanoParams::new(2.0, 5.0, 5.5);
        let at = |t: f64| {
            let g1 = (-(t - 0.5f64).powi(2)).exp();
            let g2 = (-(t + 0.5f64).powi(2)).exp();
            RateSnapshot {
                g1,
                g2,
                g3: 3.0,
                dg1: -2.0 * (t - 0.5) * g1,
                dg2: -2.0 * (t + 0.5) * g2,
                dg3: 0.0,
            }
        };
        let h = 1e-5;
        for &t in &[-1.3, -0.2, 0.0, 0.4, 1.7] {
            let (_, rate) = crossing_detuning(&q, &at(t)).unwrap();
            let fd = (crossing_detuning(&q, &at(t + h)).unwrap().0
                - crossing_detuning(&q, &at(t - h)).unwrap().0)
                / (2.0 * h);
            assert_relative_eq!(rate, fd, epsilon = 1e-7, max_relative = 1e-7);
        }
    }
}

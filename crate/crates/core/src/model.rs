//! The tripod-continuum Hamiltonian `H = A + iB` and its trapping conditions.
//!
//! The continuum has already been eliminated, so the three bound-state
//! amplitudes evolve under a non-Hermitian 3x3 matrix. Its real part `A`
//! carries the detunings and the Fano-weighted two-photon couplings, its
//! imaginary part `B = -vv^T/2` with `v = (sqrt G1, sqrt G2, sqrt G3)` is the
//! rank-one ionization term. When `[A, B] = 0` two eigenstates of `H` do not
//! decay at all (population trapping).

use crate::error::{Result, TripodError};
use crate::matrix::{real_frobenius, real_mul, ComplexMatrix3, Real3};
use crate::scalar::{c, half, sqrt0, Real, C};

/// Fano asymmetry parameters of the three two-photon links.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FanoParams<T> {
    pub q12: T,
    pub q13: T,
    pub q23: T,
}

impl<T: Real> FanoParams<T> {
    pub fn new(q12: T, q13: T, q23: T) -> Self {
        Self { q12, q13, q23 }
    }

    /// All three links share one asymmetry parameter.
    pub fn equal(q: T) -> Self {
        Self::new(q, q, q)
    }

    pub fn is_finite(&self) -> bool {
        self.q12.is_finite() && self.q13.is_finite() && self.q23.is_finite()
    }

    pub fn scaled(&self, k: T) -> Self {
        Self::new(self.q12 * k, self.q13 * k, self.q23 * k)
    }
}

/// Ionization rates of the pump-, Stokes- and control-coupled states at one
/// instant, with their time derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RateSnapshot<T> {
    pub g1: T,
    pub g2: T,
    pub g3: T,
    pub dg1: T,
    pub dg2: T,
    pub dg3: T,
}

impl<T: Real> RateSnapshot<T> {
    /// Rates with vanishing derivatives.
    pub fn frozen(g1: T, g2: T, g3: T) -> Self {
        Self {
            g1,
            g2,
            g3,
            dg1: T::zero(),
            dg2: T::zero(),
            dg3: T::zero(),
        }
    }

    pub fn total(&self) -> T {
        self.g1 + self.g2 + self.g3
    }

    pub fn total_rate_of_change(&self) -> T {
        self.dg1 + self.dg2 + self.dg3
    }

    pub fn is_valid(&self) -> bool {
        [self.g1, self.g2, self.g3]
            .iter()
            .all(|g| g.is_finite() && *g >= T::zero())
            && [self.dg1, self.dg2, self.dg3].iter().all(|g| g.is_finite())
    }

    pub fn rates(&self) -> [T; 3] {
        [self.g1, self.g2, self.g3]
    }

    /// `(sqrt G1, sqrt G2, sqrt G3)`, the direction of the decaying state.
    pub fn amplitudes(&self) -> [T; 3] {
        [sqrt0(self.g1), sqrt0(self.g2), sqrt0(self.g3)]
    }

    pub fn scaled(&self, k: T) -> Self {
        Self {
            g1: self.g1 * k,
            g2: self.g2 * k,
            g3: self.g3 * k,
            dg1: self.dg1 * k,
            dg2: self.dg2 * k,
            dg3: self.dg3 * k,
        }
    }
}

/// Two-photon detunings of states 1 and 2 relative to state 3.
///
/// The effective detunings entering the Hamiltonian are
/// `D1 = delta1 + S1 - S3` and `D2 = delta2 + S2 - S3`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Detunings<T> {
    pub delta1: T,
    pub delta2: T,
    pub stark: [T; 3],
}

impl<T: Real> Detunings<T> {
    /// Static detunings without Stark shifts.
    pub fn new(delta1: T, delta2: T) -> Self {
        Self {
            delta1,
            delta2,
            stark: [T::zero(); 3],
        }
    }

    pub fn with_stark(delta1: T, delta2: T, stark: [T; 3]) -> Self {
        Self {
            delta1,
            delta2,
            stark,
        }
    }

    pub fn d1(&self) -> T {
        self.delta1 + self.stark[0] - self.stark[2]
    }

    pub fn d2(&self) -> T {
        self.delta2 + self.stark[1] - self.stark[2]
    }
}

/// Detunings that make `A` and `B` commute at the given rates.
pub fn trapping_detunings<T: Real>(q: &FanoParams<T>, r: &RateSnapshot<T>) -> Detunings<T> {
    let h = half::<T>();
    let d1 = h * q.q13 * (r.g3 - r.g1) + h * (q.q12 - q.q23) * r.g2;
    let d2 = h * q.q23 * (r.g3 - r.g2) + h * (q.q12 - q.q13) * r.g1;
    Detunings::new(d1, d2)
}

/// Builds `H = A + iB` for the given Fano parameters, rates and detunings.
pub fn assemble_hamiltonian<T: Real>(
    q: &FanoParams<T>,
    r: &RateSnapshot<T>,
    d: &Detunings<T>,
) -> ComplexMatrix3<T> {
    let h = half::<T>();
    let [s1, s2, s3] = r.amplitudes();
    let s12 = s1 * s2;
    let s13 = s1 * s3;
    let s23 = s2 * s3;

    let a = [
        [d.d1(), -h * s12 * q.q12, -h * s13 * q.q13],
        [-h * s12 * q.q12, d.d2(), -h * s23 * q.q23],
        [-h * s13 * q.q13, -h * s23 * q.q23, T::zero()],
    ];
    let b = [
        [-h * r.g1, -h * s12, -h * s13],
        [-h * s12, -h * r.g2, -h * s23],
        [-h * s13, -h * s23, -h * r.g3],
    ];
    ComplexMatrix3::from_parts(&a, &b)
}

/// Frobenius norm of `AB - BA` for the real and imaginary parts of `h`.
pub fn commutator_defect<T: Real>(h: &ComplexMatrix3<T>) -> T {
    let a = h.re();
    let b = h.im();
    real_frobenius(&commutator(&a, &b))
}

pub(crate) fn commutator<T: Real>(a: &Real3<T>, b: &Real3<T>) -> Real3<T> {
    let ab = real_mul(a, b);
    let ba = real_mul(b, a);
    let mut out = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = ab[i][j] - ba[i][j];
        }
    }
    out
}

/// Eigenvalues of `A`, `B` and `H` under the trapping conditions.
///
/// Index 3 (slot 2) is always the decaying eigenvalue: `lam_a[2]` is paired
/// with `lam_b[2] = -G/2`, the other two with the zero eigenvalues of `B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSplit<T: Real> {
    pub lam_a: [T; 3],
    pub lam_b: [T; 3],
    pub lam_h: [C<T>; 3],
}

/// The auxiliary quantities `a` and `b` of the trapped-subspace eigenvalues
/// `a +- sqrt(a^2 + b)`.
pub fn eigen_aux<T: Real>(q: &FanoParams<T>, r: &RateSnapshot<T>) -> (T, T) {
    let quarter = T::lit(0.25);
    let a = quarter * (q.q13 * (r.g3 - r.g1) + q.q23 * (r.g3 - r.g2) + q.q12 * (r.g1 + r.g2));
    let b = quarter
        * r.g3
        * (q.q13 * (q.q13 - q.q12) * r.g1 + q.q23 * (q.q23 - q.q12) * r.g2 - q.q13 * q.q23 * r.g3);
    (a, b)
}

/// `a^2 + b` written as the sum of squares `((hbb - haa)/2)^2 + hab^2`, which
/// does not cancel when the trapped pair is nearly degenerate. `None` when
/// `G1 + G2` vanishes.
fn trapped_half_gap_sq<T: Real>(q: &FanoParams<T>, r: &RateSnapshot<T>) -> Option<T> {
    let g12 = r.g1 + r.g2;
    if g12 <= T::guard() {
        return None;
    }
    let dq = q.q13 - q.q23;
    let lin = (q.q13 - q.q12) * r.g1 + (q.q23 - q.q12) * r.g2;
    let num = r.g3 * dq * (r.g1 - r.g2) + g12 * lin;
    let s2 = r.g1 * r.g2 * r.g3 * r.total();
    let sixteen_g2 = T::lit(16.0) * g12 * g12;
    Some((num * num + T::lit(4.0) * dq * dq * s2) / sixteen_g2)
}

pub fn eigen_split<T: Real>(q: &FanoParams<T>, r: &RateSnapshot<T>) -> Result<EigenSplit<T>> {
    let (a, b) = eigen_aux(q, r);
    let disc = a * a + b;
    // a^2 + b is the squared half-splitting of a real symmetric 2x2 block, so
    // only round-off can push it below zero.
    let scale = a * a + b.abs();
    let slack = T::epsilon() * T::lit(256.0) * scale;
    if disc < -slack {
        return Err(TripodError::NegativeDiscriminant {
            value: disc.to_f64().unwrap_or(f64::NAN),
        });
    }
    let root = sqrt0(trapped_half_gap_sq(q, r).unwrap_or(disc));
    let lam3 = -half::<T>() * (q.q13 * r.g1 + q.q23 * r.g2);
    let lam_a = [a + root, a - root, lam3];
    let lam_b = [T::zero(), T::zero(), -half::<T>() * r.total()];
    let lam_h = [
        c(lam_a[0], lam_b[0]),
        c(lam_a[1], lam_b[1]),
        c(lam_a[2], lam_b[2]),
    ];
    Ok(EigenSplit {
        lam_a,
        lam_b,
        lam_h,
    })
}

use crate::angles::mixing_angles;
use crate::error::{Result, TripodError};
use crate::model::FanoParams;
use crate::pulses::PulseTriple;
use crate::quad::adaptive_simpson_panels;
use crate::rotated::theta_rate;
use crate::scalar::Real;

/// Adiabatic-limit fate of the population for counterintuitive pulses under
/// a control pulse that comes first and leaves last.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransferAsymptotics {
    /// `q13 = q23 != q12`: transfer 1 -> 2 along `Phi1`.
    TransferViaPhi1,
    /// `q13 != q23`: population returns to state 1 along `Phi2`.
    ReturnViaPhi2,
    /// `q12 = q13 = q23`: the final superposition depends on the delay.
    DelayControlled,
}

impl TransferAsymptotics {
    pub fn name(&self) -> &'static str {
        match self {
            Self::TransferViaPhi1 => "TransferViaPhi1",
            Self::ReturnViaPhi2 => "ReturnViaPhi2",
            Self::DelayControlled => "DelayControlled",
        }
    }
}

const Q_EQ_TOL: f64 = 1e-12;

fn q_eq<T: Real>(a: T, b: T) -> bool {
    (a - b).abs() <= T::lit(Q_EQ_TOL) * a.abs().max(b.abs())
}

pub fn transfer_asymptotics<T: Real>(q: &FanoParams<T>) -> TransferAsymptotics {
    if !q_eq(q.q13, q.q23) {
        TransferAsymptotics::ReturnViaPhi2
    } else if q_eq(q.q12, q.q13) && q_eq(q.q12, q.q23) {
        TransferAsymptotics::DelayControlled
    } else {
        TransferAsymptotics::TransferViaPhi1
    }
}

/// Populations reached by adiabatic following in the degenerate
/// `(Phi1', Phi2')` pair, which rotates by `I = integral of theta_dot sin(phi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdiabaticTransfer<T> {
    pub p1: T,
    pub p2: T,
    pub p3: T,
    pub rotation: T,
    /// False when the window ends do not show the required ordering
    /// (control dominant at both ends, Stokes before pump).
    pub ordering_ok: bool,
}

/// Ratio below which one rate counts as negligible against another at the
/// window edges.
const ORDERING_RATIO: f64 = 1e-3;

fn ordering_holds<T: Real>(p: &PulseTriple<T>, t0: T, t1: T) -> bool {
    let small = |a: T, b: T| b > T::zero() && a <= T::lit(ORDERING_RATIO) * b;
    let (early, late) = (p.evaluate(t0), p.evaluate(t1));
    small(early.g1, early.g3)
        && small(early.g2, early.g3)
        && small(late.g1, late.g3)
        && small(late.g2, late.g3)
        && small(early.g1, early.g2)
        && small(late.g2, late.g1)
}

/// Adiabatic-limit populations for all-equal Fano parameters.
///
/// The system starts in `Phi1'(-inf) = psi1` and the pair rotates by `I`;
/// with `Phi1'(+inf) = -psi2` and `Phi2'(+inf) = psi1` this leaves
/// `P1 = sin^2 I` and `P2 = cos^2 I`.
pub fn adiabatic_transfer_populations<T: Real>(
    p: &PulseTriple<T>,
    window: (T, T),
) -> Result<AdiabaticTransfer<T>> {
    let (t0, t1) = window;
    if !(t0.is_finite() && t1.is_finite() && t0 < t1) {
        return Err(TripodError::InvalidInput(
            "transfer window must satisfy t0 < t1".into(),
        ));
    }
    p.validate()?;
    // Any Fano parameters give the same theta and phi.
    let unit = FanoParams::equal(T::one());
    let integrand = |t: T| {
        let r = p.evaluate(t);
        theta_rate(&r) * mixing_angles(&unit, &r).phi.sin()
    };
    let width = p.max_width().unwrap_or(t1 - t0);
    let panels = ((t1 - t0) / width * T::lit(8.0))
        .ceil()
        .to_usize()
        .unwrap_or(1)
        .clamp(1, 100_000);
    let rotation = adaptive_simpson_panels(integrand, t0, t1, T::lit(1e-12), panels);
    let (s, c) = rotation.sin_cos();
    Ok(AdiabaticTransfer {
        p1: s * s,
        p2: c * c,
        p3: T::zero(),
        rotation,
        ordering_ok: ordering_holds(p, t0, t1),
    })
}

/// Bounds on `gamma3 T` between which the near-adiabatic transfer 1 -> 2 is
/// expected for a strong constant control and equal pump/Stokes peaks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdiabaticityWindow<T> {
    pub lower: T,
    /// Infinite when `q13 = q23`.
    pub upper: T,
    /// `gamma3 T` of the configuration the window was computed for.
    pub gamma3_t: T,
}

impl<T: Real> AdiabaticityWindow<T> {
    /// `lower * margin <= gamma3 T <= upper / margin`.
    pub fn contains_with_margin(&self, margin: T) -> bool {
        self.gamma3_t >= self.lower * margin && self.gamma3_t <= self.upper / margin
    }

    pub fn contains(&self, x: T) -> bool {
        x > self.lower && x < self.upper
    }
}

pub fn adiabaticity_window<T: Real>(
    q: &FanoParams<T>,
    gamma3: T,
    tau: T,
    width: T,
) -> Result<AdiabaticityWindow<T>> {
    if !(width > T::zero()) {
        return Err(TripodError::InvalidInput(
            "pulse width must be positive".into(),
        ));
    }
    let two = T::lit(2.0);
    let sum = q.q13 + q.q23;
    let lower = two * tau / (width * (T::one() + T::lit(0.25) * sum * sum).sqrt());
    let diff = (q.q13 - q.q23).abs();
    let upper = if diff == T::zero() {
        T::infinity()
    } else {
        T::lit(8.0) * tau / (width * diff)
    };
    Ok(AdiabaticityWindow {
        lower,
        upper,
        gamma3_t: gamma3 * width,
    })
}

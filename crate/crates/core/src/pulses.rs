//! Ionization-rate envelopes for the pump, Stokes and control lasers.

use crate::error::{Result, TripodError};
use crate::model::RateSnapshot;
use crate::quad::adaptive_simpson_panels;
use crate::scalar::Real;

/// Number of widths after which a Gaussian tail is considered switched off.
pub const TAIL_WIDTHS: f64 = 6.0;

/// Unit-peak Gaussian `exp(-(t - center)^2 / width^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope<T> {
    pub center: T,
    pub width: T,
}

impl<T: Real> Envelope<T> {
    pub fn new(center: T, width: T) -> Self {
        Self { center, width }
    }

    /// Value and time derivative.
    pub fn eval(&self, t: T) -> (T, T) {
        let x = (t - self.center) / self.width;
        let f = (-x * x).exp();
        (f, -T::lit(2.0) * x / self.width * f)
    }

    /// Integral over the whole real line.
    pub fn area(&self) -> T {
        self.width * T::PI().sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseShape<T> {
    /// `gamma exp(-(t - center)^2 / width^2)`.
    Gaussian {
        gamma: T,
        center: T,
        width: T,
    },
    Constant {
        gamma: T,
    },
    /// `gamma f(t)` with an envelope shared between several lasers.
    SharedEnvelope {
        gamma: T,
        envelope: Envelope<T>,
    },
}

impl<T: Real> PulseShape<T> {
    pub fn gaussian(gamma: T, center: T, width: T) -> Self {
        Self::Gaussian {
            gamma,
            center,
            width,
        }
    }

    pub fn constant(gamma: T) -> Self {
        Self::Constant { gamma }
    }

    pub fn off() -> Self {
        Self::Constant { gamma: T::zero() }
    }

    pub fn peak(&self) -> T {
        match *self {
            Self::Gaussian { gamma, .. }
            | Self::Constant { gamma }
            | Self::SharedEnvelope { gamma, .. } => gamma,
        }
    }

    /// Rate and its time derivative.
    pub fn eval(&self, t: T) -> (T, T) {
        match *self {
            Self::Gaussian {
                gamma,
                center,
                width,
            } => {
                let (f, df) = Envelope::new(center, width).eval(t);
                (gamma * f, gamma * df)
            }
            Self::Constant { gamma } => (gamma, T::zero()),
            Self::SharedEnvelope { gamma, envelope } => {
                let (f, df) = envelope.eval(t);
                (gamma * f, gamma * df)
            }
        }
    }

    /// Centre and width of a time-dependent pulse.
    pub fn envelope(&self) -> Option<Envelope<T>> {
        match *self {
            Self::Gaussian { center, width, .. } => Some(Envelope::new(center, width)),
            Self::SharedEnvelope { envelope, .. } => Some(envelope),
            Self::Constant { .. } => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let gamma = self.peak();
        if !(gamma.is_finite() && gamma >= T::zero()) {
            return Err(TripodError::InvalidInput(format!(
                "pulse peak rate must be >= 0, got {gamma}"
            )));
        }
        if let Some(e) = self.envelope() {
            if !(e.width.is_finite() && e.width > T::zero() && e.center.is_finite()) {
                return Err(TripodError::InvalidInput(format!(
                    "pulse width must be > 0, got {}",
                    e.width
                )));
            }
        }
        Ok(())
    }

    /// Same shape with its time axis stretched by `k` about `t = 0`.
    pub fn stretched(&self, k: T) -> Self {
        match *self {
            Self::Gaussian {
                gamma,
                center,
                width,
            } => Self::Gaussian {
                gamma,
                center: center * k,
                width: width * k,
            },
            Self::Constant { gamma } => Self::Constant { gamma },
            Self::SharedEnvelope { gamma, envelope } => Self::SharedEnvelope {
                gamma,
                envelope: Envelope::new(envelope.center * k, envelope.width * k),
            },
        }
    }

    pub fn shifted(&self, dt: T) -> Self {
        match *self {
            Self::Gaussian {
                gamma,
                center,
                width,
            } => Self::Gaussian {
                gamma,
                center: center + dt,
                width,
            },
            Self::Constant { gamma } => Self::Constant { gamma },
            Self::SharedEnvelope { gamma, envelope } => Self::SharedEnvelope {
                gamma,
                envelope: Envelope::new(envelope.center + dt, envelope.width),
            },
        }
    }

    pub fn with_peak(&self, gamma: T) -> Self {
        match *self {
            Self::Gaussian { center, width, .. } => Self::Gaussian {
                gamma,
                center,
                width,
            },
            Self::Constant { .. } => Self::Constant { gamma },
            Self::SharedEnvelope { envelope, .. } => Self::SharedEnvelope { gamma, envelope },
        }
    }
}

/// Pump (state 1), Stokes (state 2) and control (state 3) rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseTriple<T> {
    pub pump: PulseShape<T>,
    pub stokes: PulseShape<T>,
    pub control: PulseShape<T>,
}

impl<T: Real> PulseTriple<T> {
    pub fn new(pump: PulseShape<T>, stokes: PulseShape<T>, control: PulseShape<T>) -> Self {
        Self {
            pump,
            stokes,
            control,
        }
    }

    pub fn off() -> Self {
        Self::new(PulseShape::off(), PulseShape::off(), PulseShape::off())
    }

    /// Gaussian pump centred at `+tau`, Gaussian Stokes at `-tau` (total
    /// delay `2 tau`), both of width `width`, and a constant control rate.
    pub fn delayed(gamma1: T, gamma2: T, gamma3: T, tau: T, width: T) -> Self {
        Self::new(
            PulseShape::gaussian(gamma1, tau, width),
            PulseShape::gaussian(gamma2, -tau, width),
            PulseShape::constant(gamma3),
        )
    }

    /// All three rates follow one envelope: `G_k(t) = gamma_k f(t)`.
    pub fn coincident(gammas: [T; 3], envelope: Envelope<T>) -> Self {
        let shape = |gamma| PulseShape::SharedEnvelope { gamma, envelope };
        Self::new(shape(gammas[0]), shape(gammas[1]), shape(gammas[2]))
    }

    pub fn shapes(&self) -> [&PulseShape<T>; 3] {
        [&self.pump, &self.stokes, &self.control]
    }

    pub fn validate(&self) -> Result<()> {
        self.shapes().iter().try_for_each(|p| p.validate())
    }

    pub fn evaluate(&self, t: T) -> RateSnapshot<T> {
        let (g1, dg1) = self.pump.eval(t);
        let (g2, dg2) = self.stokes.eval(t);
        let (g3, dg3) = self.control.eval(t);
        RateSnapshot {
            g1,
            g2,
            g3,
            dg1,
            dg2,
            dg3,
        }
    }

    pub fn max_peak(&self) -> T {
        self.shapes().iter().fold(T::zero(), |m, p| m.max(p.peak()))
    }

    /// Largest Gaussian width, if any pulse is time dependent.
    pub fn max_width(&self) -> Option<T> {
        self.shapes()
            .iter()
            .filter_map(|p| p.envelope())
            .map(|e| e.width)
            .reduce(T::max)
    }

    /// Half-length of the window outside which every Gaussian is below
    /// `exp(-TAIL_WIDTHS^2)`; `None` when no pulse is time dependent.
    pub fn default_span(&self) -> Option<T> {
        self.span_with(T::lit(TAIL_WIDTHS))
    }

    /// Largest `|center| + widths * width` over the time-dependent pulses.
    pub fn span_with(&self, widths: T) -> Option<T> {
        self.shapes()
            .iter()
            .filter_map(|p| p.envelope())
            .map(|e| e.center.abs() + widths * e.width)
            .reduce(T::max)
    }

    pub fn stretched(&self, k: T) -> Self {
        Self::new(
            self.pump.stretched(k),
            self.stokes.stretched(k),
            self.control.stretched(k),
        )
    }

    pub fn shifted(&self, dt: T) -> Self {
        Self::new(
            self.pump.shifted(dt),
            self.stokes.shifted(dt),
            self.control.shifted(dt),
        )
    }

    /// Integral of the total rate over `[t0, t1]`.
    ///
    /// Infinite bounds are allowed: a Gaussian over the full line uses its
    /// closed form and over a half line is cut `40` widths from its centre.
    /// A constant nonzero rate over an infinite interval is an error.
    pub fn pulse_area(&self, t0: T, t1: T) -> Result<T> {
        if t0.is_nan() || t1.is_nan() || t0 >= t1 {
            return Err(TripodError::InvalidInput(format!(
                "pulse area needs t0 < t1, got [{t0}, {t1}]"
            )));
        }
        let infinite = t0.is_infinite() || t1.is_infinite();
        let mut total = T::zero();
        for p in self.shapes() {
            match p.envelope() {
                None => {
                    let gamma = p.peak();
                    if gamma == T::zero() {
                        continue;
                    }
                    if infinite {
                        return Err(TripodError::InfiniteArea);
                    }
                    total = total + gamma * (t1 - t0);
                }
                Some(e) => {
                    let gamma = p.peak();
                    if gamma == T::zero() {
                        continue;
                    }
                    if t0 == T::neg_infinity() && t1 == T::infinity() {
                        total = total + gamma * e.area();
                        continue;
                    }
                    let cut = T::lit(40.0) * e.width;
                    let lo = t0.max(e.center - cut);
                    let hi = t1.min(e.center + cut);
                    if lo >= hi {
                        continue;
                    }
                    let tol = T::lit(1e-10) * gamma * e.width;
                    let panels = ((hi - lo) / e.width)
                        .ceil()
                        .to_usize()
                        .unwrap_or(1)
                        .clamp(1, 4096);
                    total = total + adaptive_simpson_panels(|t| p.eval(t).0, lo, hi, tol, panels);
                }
            }
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gaussian_peak() {
        let p = PulseTriple::new(
            PulseShape::gaussian(2.0, 0.7, 1.3),
            PulseShape::off(),
            PulseShape::constant(3.0),
        );
        let r = p.evaluate(0.7);
        assert_eq!(r.g1, 2.0);
        assert_eq!(r.dg1, 0.0);
        assert_eq!(r.g3, 3.0);
        assert_eq!(r.dg3, 0.0);
    }

    #[test]
    fn gaussian_one_width_out() {
        let (g, dg) = PulseShape::gaussian(1.5, 0.0, 2.0).eval(2.0);
        let e = (-1.0f64).exp();
        assert_relative_eq!(g, 1.5 * e, epsilon = 1e-15);
        assert_relative_eq!(dg, -2.0 * 1.5 * e / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn zero_pulses_have_zero_area() {
        assert_eq!(
            PulseTriple::<f64>::off()
                .pulse_area(f64::NEG_INFINITY, f64::INFINITY)
                .unwrap(),
            0.0
        );
    }

    #[test]
    fn full_line_gaussian_area_matches_quadrature() {
        let (gamma, width) = (1.7, 0.8);
        let p = PulseTriple::new(
            PulseShape::gaussian(gamma, 0.0, width),
            PulseShape::off(),
            PulseShape::off(),
        );
        let exact = p.pulse_area(f64::NEG_INFINITY, f64::INFINITY).unwrap();
        assert_relative_eq!(
            exact,
            gamma * width * std::f64::consts::PI.sqrt(),
            epsilon = 1e-15
        );
        let numeric = p.pulse_area(-40.0, 40.0).unwrap();
        assert_relative_eq!(numeric, exact, epsilon = 1e-10);
        let half_line = p.pulse_area(0.0, f64::INFINITY).unwrap();
        assert_relative_eq!(half_line, exact / 2.0, epsilon = 1e-10);
    }

    #[test]
    fn coincident_area_is_linear_in_weights() {
        let env = Envelope::new(0.3, 1.1);
        let p = PulseTriple::coincident([0.5, 1.0, 2.5], env);
        let a = p.pulse_area(f64::NEG_INFINITY, f64::INFINITY).unwrap();
        assert_relative_eq!(a, 4.0 * env.area(), epsilon = 1e-14);
    }

    #[test]
    fn constant_over_infinite_interval_is_rejected() {
        let p = PulseTriple::delayed(1.0, 1.0, 2.0, 0.5, 1.0);
        assert_eq!(
            p.pulse_area(0.0, f64::INFINITY),
            Err(TripodError::InfiniteArea)
        );
        assert_relative_eq!(
            p.pulse_area(-10.0, 10.0).unwrap(),
            40.0 + 2.0 * std::f64::consts::PI.sqrt(),
            epsilon = 1e-9
        );
    }

    #[test]
    fn invalid_shapes_rejected() {
        assert!(PulseShape::gaussian(1.0, 0.0, 0.0).validate().is_err());
        assert!(PulseShape::constant(-1.0).validate().is_err());
        assert!(PulseTriple::<f64>::off().validate().is_ok());
    }
}

use crate::error::{Result, TripodError};
use crate::propagator::Populations;
use crate::scalar::{half, Real};

/// Coincident pulses `G_k(t) = gamma_k f(t)` with one common Fano parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoincidentSpec<T> {
    pub gamma1: T,
    pub gamma2: T,
    pub gamma3: T,
    pub q: T,
    /// Total pulse area `integral of G(t) dt`.
    pub area: T,
}

impl<T: Real> CoincidentSpec<T> {
    pub fn new(gammas: [T; 3], q: T, area: T) -> Self {
        Self {
            gamma1: gammas[0],
            gamma2: gammas[1],
            gamma3: gammas[2],
            q,
            area,
        }
    }

    pub fn total(&self) -> T {
        self.gamma1 + self.gamma2 + self.gamma3
    }

    pub fn validate(&self) -> Result<()> {
        let g = [self.gamma1, self.gamma2, self.gamma3];
        if g.iter().any(|x| !(x.is_finite() && *x >= T::zero())) || !(self.total() > T::zero()) {
            return Err(TripodError::InvalidInput(
                "coincident weights must be >= 0 with a positive sum".into(),
            ));
        }
        if !(self.area.is_finite() && self.area >= T::zero()) || !self.q.is_finite() {
            return Err(TripodError::InvalidInput(
                "pulse area must be finite and >= 0".into(),
            ));
        }
        Ok(())
    }
}

/// Final populations for coincident pulses starting in state 1.
///
/// Only the component along `v = (sqrt g1, sqrt g2, sqrt g3)` evolves, so
/// state `k` picks up a share proportional to `g1 gk`; with `g3 = 0` state 3
/// stays empty.
pub fn coincident_populations<T: Real>(s: &CoincidentSpec<T>) -> Result<Populations<T>> {
    s.validate()?;
    let g = s.total();
    let g2 = g * g;
    let e = (-s.area).exp();
    let e_half = (-half::<T>() * s.area).exp();
    let cos = (half::<T>() * s.q * s.area).cos();
    let rest = s.gamma2 + s.gamma3;
    let two = T::lit(2.0);
    let beat = T::one() + e - two * e_half * cos;

    let p1 = (rest * rest + s.gamma1 * s.gamma1 * e + two * s.gamma1 * rest * e_half * cos) / g2;
    let p2 = s.gamma1 * s.gamma2 / g2 * beat;
    let p3 = s.gamma1 * s.gamma3 / g2 * beat;
    let pi = s.gamma1 / g * (T::one() - e);
    Ok(Populations { p1, p2, p3, pi })
}

/// Strong-pulse ionization limit `gamma1 / (gamma1 + gamma2 + gamma3)`.
pub fn max_ionization_coincident<T: Real>(g1: T, g2: T, g3: T) -> Result<T> {
    let g = g1 + g2 + g3;
    if !(g > T::zero()) {
        return Err(TripodError::InvalidInput(
            "sum of weights must be positive".into(),
        ));
    }
    Ok(g1 / g)
}

/// Ionization when only the decaying adiabatic state is populated and
/// followed adiabatically: `1 - exp(-A)`.
pub fn complete_ionization<T: Real>(area: T) -> T {
    T::one() - (-area).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn no_interaction() {
        let p = coincident_populations(&CoincidentSpec::new([1.0, 2.0, 3.0], 4.0, 0.0)).unwrap();
        assert_relative_eq!(p.p1, 1.0, epsilon = 1e-15);
        assert_relative_eq!(p.p2, 0.0, epsilon = 1e-15);
        assert_relative_eq!(p.p3, 0.0, epsilon = 1e-15);
        assert_relative_eq!(p.pi, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn adiabatic_limit_for_equal_rates() {
        let p = coincident_populations(&CoincidentSpec::new([1.0, 1.0, 1.0], 5.0, 50.0)).unwrap();
        assert_relative_eq!(p.p1, 4.0 / 9.0, epsilon = 1e-10);
        assert_relative_eq!(p.p2, 1.0 / 9.0, epsilon = 1e-10);
        assert_relative_eq!(p.p3, 1.0 / 9.0, epsilon = 1e-10);
        assert_relative_eq!(p.pi, 1.0 / 3.0, epsilon = 1e-10);
    }

    #[test]
    fn uncoupled_state_stays_empty() {
        let p = coincident_populations(&CoincidentSpec::new([2.0, 1.0, 0.0], 3.0, 1.7)).unwrap();
        assert_eq!(p.p3, 0.0);
        assert!(p.p2 > 0.0);
    }

    #[test]
    fn max_ionization_values() {
        assert_relative_eq!(max_ionization_coincident(1.0, 1.0, 1.0).unwrap(), 1.0 / 3.0);
        assert_relative_eq!(max_ionization_coincident(1.0, 1.0, 0.0).unwrap(), 0.5);
        assert_eq!(max_ionization_coincident(0.0, 1.0, 1.0).unwrap(), 0.0);
        assert!(max_ionization_coincident(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn complete_ionization_values() {
        assert_eq!(complete_ionization(0.0), 0.0);
        assert_relative_eq!(
            complete_ionization(std::f64::consts::LN_2),
            0.5,
            epsilon = 1e-15
        );
        assert_relative_eq!(complete_ionization(10.0), 0.9999546, epsilon = 1e-7);
    }

    #[test]
    fn invalid_specs() {
        assert!(coincident_populations(&CoincidentSpec::new([0.0, 0.0, 0.0], 1.0, 1.0)).is_err());
        assert!(coincident_populations(&CoincidentSpec::new([1.0, 0.0, 0.0], 1.0, -1.0)).is_err());
    }
}

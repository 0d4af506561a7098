//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating point type the physics is written against (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Denominator guard below which a ratio of rates is treated as 0/0.
    #[inline]
    fn guard() -> Self {
        Self::lit(1e-30)
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn c<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn half<T: Real>() -> T {
    T::lit(0.5)
}

/// Square root that clamps tiny negative round-off to zero.
#[inline]
pub(crate) fn sqrt0<T: Real>(x: T) -> T {
    if x > T::zero() {
        x.sqrt()
    } else {
        T::zero()
    }
}

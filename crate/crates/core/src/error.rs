use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TripodError {
    /// `a^2 + b` under the square root of the A-eigenvalues came out negative.
    #[error("negative discriminant a^2 + b = {value:e} in the eigenvalues of A")]
    NegativeDiscriminant { value: f64 },

    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(&'static str),

    #[error("step size underflow at t = {t}")]
    StepSizeUnderflow { t: f64 },

    #[error("step budget of {steps} exhausted at t = {t}")]
    TooManySteps { steps: usize, t: f64 },

    #[error("area of a constant pulse over an infinite interval")]
    InfiniteArea,

    #[error("haa - hbb does not change sign on [{t0}, {t1}]")]
    NoCrossing { t0: f64, t1: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, TripodError>;

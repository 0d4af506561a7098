//! Three bound states coupled to each other through one common continuum.
//!
//! Each state is ionized by its own laser (pump, Stokes, control) at a rate
//! `G_k(t)`; eliminating the continuum leaves a non-Hermitian 3x3
//! Hamiltonian for the bound amplitudes. This crate builds that Hamiltonian,
//! its trapping detunings, eigenvalues and adiabatic bases, propagates the
//! amplitudes, and evaluates the closed-form limits (coincident pulses,
//! ionization extremes, adiabatic transfer, two-state reduction).
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix the scalar to `f64`.

pub mod analytic;
pub mod angles;
pub mod error;
pub mod matrix;
pub mod model;
pub mod ode;
pub mod propagator;
pub mod pulses;
pub mod quad;
pub mod rotated;
pub mod scalar;

pub use angles::{
    adiabatic_eigenvalues, adiabatic_states, mixing_angles, rotation_matrix, AngleStatus,
    AngleTracker, MixingAngles,
};
pub use error::{Result, TripodError};
pub use matrix::ComplexMatrix3;
pub use model::{
    assemble_hamiltonian, commutator_defect, eigen_split, trapping_detunings, Detunings,
    EigenSplit, FanoParams, RateSnapshot,
};
pub use propagator::{
    populations, propagate, propagate_amplitudes, AmplitudeVector, DetuningPolicy, Populations,
    Record, TimeGrid, Trajectory,
};
pub use pulses::{Envelope, PulseShape, PulseTriple};
pub use rotated::{rotated_hamiltonian, RotatedHamiltonian};
pub use scalar::{Real, C};

pub type FanoParams64 = FanoParams<f64>;
pub type RateSnapshot64 = RateSnapshot<f64>;
pub type Detunings64 = Detunings<f64>;
pub type ComplexMatrix64 = ComplexMatrix3<f64>;
pub type MixingAngles64 = MixingAngles<f64>;
pub type EigenSplit64 = EigenSplit<f64>;
pub type RotatedHamiltonian64 = RotatedHamiltonian<f64>;
pub type PulseShape64 = PulseShape<f64>;
pub type PulseTriple64 = PulseTriple<f64>;
pub type AmplitudeVector64 = AmplitudeVector<f64>;
pub type DetuningPolicy64 = DetuningPolicy<f64>;
pub type TimeGrid64 = TimeGrid<f64>;
pub type Trajectory64 = Trajectory<f64>;
pub type Populations64 = Populations<f64>;
pub type EffectiveTwoState64 = analytic::EffectiveTwoState<f64>;
pub type CoincidentSpec64 = analytic::CoincidentSpec<f64>;

pub type FanoParams32 = FanoParams<f32>;
pub type RateSnapshot32 = RateSnapshot<f32>;
pub type PulseTriple32 = PulseTriple<f32>;
pub type Trajectory32 = Trajectory<f32>;

//! Closed-form results and reduced models.

mod coincident;
mod crossing;
mod effective;
mod transfer;

pub use coincident::{
    coincident_populations, complete_ionization, max_ionization_coincident, CoincidentSpec,
};
pub use crossing::{landau_zener_conditions, CrossingDiagnostics};
pub use effective::{
    effective_two_state, propagate_effective, EffectiveRecord, EffectiveTrajectory,
    EffectiveTwoState,
};
pub use transfer::{
    adiabatic_transfer_populations, adiabaticity_window, transfer_asymptotics, AdiabaticTransfer,
    AdiabaticityWindow, TransferAsymptotics,
};

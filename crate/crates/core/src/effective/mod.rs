//! Effective spin model derived from the driven cavity array.
//!
//! Two successive eliminations map the microscopic system onto a spin-1/2
//! model on the honeycomb lattice: first the excited atomic state is removed
//! (large laser/cavity detunings), yielding Stark shifts and photon-assisted
//! pseudo-spin couplings; then the virtual photons are removed (couplings
//! small against the photon energy), yielding two-spin interactions along
//! each bond direction plus a uniform field.
//!
//! The module exposes:
//! - [`derive_scales`]: every intermediate coefficient of the eliminations,
//! - [`effective_couplings`]: the bond/field coefficients of the spin model,
//! - [`check_conditions`]: the operating-point balance conditions under which
//!   the spin model reduces to the ideal anisotropic form,
//! - [`kitaev_couplings`]: the final bond strengths (optionally with the
//!   controlled uniform field switched on),
//! - [`build_effective_spin_hamiltonian`]: the full spin Hamiltonian on a
//!   finite lattice,
//! - [`solve_conditions`]: a forward solver that constructs laser/cavity
//!   frequencies and drive amplitudes satisfying the operating conditions
//!   from a small set of independent inputs.

pub(crate) mod conditions;
mod couplings;
mod scales;
mod solve;

pub use conditions::{
    check_conditions, ConditionEntry, ConditionKind, ConditionReport, ConditionTolerances,
};
pub use couplings::{
    build_effective_spin_hamiltonian, effective_couplings, kitaev_couplings, EffectiveCouplings,
    KitaevCouplings, Regime,
};
pub use scales::{derive_scales, DerivedScales, EQUALITY_TOL};
pub use solve::{
    solve_conditions, CavityFrequencySpec, ConditionSolveSpec, CouplingSpec, FrequencySpec,
    RabiSpec,
};

use thiserror::Error;

/// Errors raised while deriving or applying the effective theory.
#[derive(Debug, Error)]
pub enum EffectiveError {
    /// A formula divides by a detuning or coupling that is zero.
    #[error("singular parameter combination: {0}")]
    Singularity(String),
    /// The laser/cavity frequencies are mutually inconsistent.
    #[error("inconsistent frequencies: {0}")]
    InconsistentFrequencies(String),
    /// An operation that requires the operating conditions was attempted at a
    /// parameter point that violates them.
    #[error("operating conditions not met: {0}")]
    ConditionsNotMet(String),
    /// Structurally invalid input.
    #[error("invalid input: {0}")]
    Input(String),
    /// Capacity limit for dense spin-model construction exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// Propagated operator-algebra error.
    #[error(transparent)]
    Qops(#[from] crate::qops::QopsError),
}

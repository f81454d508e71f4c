//! Microscopic cavity-array models.
//!
//! This layer builds the full driven atom-cavity Hamiltonians (three-level
//! atoms, truncated photon modes), the reduced models after the excited state
//! is eliminated, and the numerical extraction utilities that validate the
//! effective spin couplings against exact diagonalization and time evolution
//! of the microscopic models.

mod builders;
mod raman;
mod reduced;

pub use builders::{
    atom_factor, build_bare_hamiltonians, build_interaction_hamiltonian, chain_space, mode_factor,
};
pub use raman::{simulate_raman_site, RamanReport};
pub use reduced::{
    build_bond_model, build_reduced_site, extract_bond_coupling, site_space, BondCoupling,
    BondModel,
};

use thiserror::Error;

/// Photon-number cutoffs per cavity mode, indexed by
/// [`crate::params::Bond::index`]; a cutoff of n keeps Fock states 0..=n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockCutoff {
    pub n: [usize; 3],
}

impl FockCutoff {
    /// The same cutoff on all three modes.
    pub fn uniform(n: usize) -> FockCutoff {
        FockCutoff { n: [n; 3] }
    }

    /// Dimension of one mode factor.
    pub fn dim(&self, bond: crate::params::Bond) -> usize {
        self.n[bond.index()] + 1
    }
}

/// Errors raised by the microscopic layer.
#[derive(Debug, Error)]
pub enum MicroscopicError {
    /// A structural requirement of the reduction is violated (e.g. the two
    /// photon-conditioned shifts of a mode differ).
    #[error("reduction condition violated: {0}")]
    Condition(String),
    /// The parameter point is outside the regime where the requested
    /// numerical extraction is meaningful.
    #[error("outside the extraction regime: {0}")]
    Regime(String),
    /// Structurally invalid input.
    #[error("invalid input: {0}")]
    Input(String),
    /// Propagated operator-algebra error.
    #[error(transparent)]
    Qops(#[from] crate::qops::QopsError),
    /// Propagated effective-theory error (scale derivation).
    #[error(transparent)]
    Effective(#[from] crate::effective::EffectiveError),
}

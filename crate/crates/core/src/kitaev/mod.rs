//! Honeycomb spin model: lattice bookkeeping, exact diagonalization, and the
//! independent free-fermion oracle used to classify phases.

pub mod chain;
pub mod lattice;
pub mod model;
pub mod oracle;

pub use chain::xy_ring_spectrum;
pub use lattice::{build_lattice, Boundary, HoneycombLattice, LatticeBond, Plaquette};
pub use model::{
    assemble_spin_hamiltonian, build_kitaev_hamiltonian, ed_ground_and_gap, plaquette_operators,
    GroundSummary, DEFAULT_ED_LIMIT,
};
pub use oracle::{freefermion_gap, PhasePoint};

use thiserror::Error;

/// Errors raised by the spin-model layer.
#[derive(Debug, Error)]
pub enum KitaevError {
    /// Structurally invalid input.
    #[error("invalid input: {0}")]
    Input(String),
    /// The request would exceed the exact-diagonalization capacity.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// The requested object is not defined for this lattice.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Propagated operator-algebra error.
    #[error(transparent)]
    Qops(#[from] crate::qops::QopsError),
}

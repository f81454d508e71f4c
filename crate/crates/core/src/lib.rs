//! Simulation library for a cavity-lattice realization of the honeycomb spin
//! model.
//!
//! The crate is organized bottom-up:
//!
//! - [`qops`]: composite Hilbert spaces, sparse operators, eigensolvers, and
//!   norm-preserving time evolution.
//! - [`params`]: microscopic system parameters and derived detunings.
//! - [`microscopic`]: cavity-array Hamiltonians at the atomic level, reduced
//!   site/bond models, and numerical extraction of effective couplings.
//! - [`effective`]: derived energy scales, the effective spin couplings, the
//!   operating-condition checker/solver, and the effective spin Hamiltonian.
//! - [`kitaev`]: the honeycomb lattice, exact diagonalization, conserved
//!   plaquettes, and the free-fermion dispersion oracle.
//! - [`feasibility`]: closed-form experimental estimates (occupancies, decay
//!   rates, figures of merit) and reference cavity-QED scenarios.

pub mod effective;
pub mod feasibility;
pub mod kitaev;
pub mod microscopic;
pub mod params;
pub mod qops;
pub mod spin;

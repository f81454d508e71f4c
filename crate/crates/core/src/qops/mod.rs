//! Operator algebra on composite Hilbert spaces.
//!
//! The building blocks are [`SpaceSpec`] (an ordered list of tensor factors),
//! [`LocalOp`] (a dense operator on a single factor), and [`OperatorMatrix`]
//! (a sparse operator on the full space). On top of those sit the two numeric
//! entry points: [`eig_low`] for low-lying spectra and [`evolve`] for
//! norm-preserving dynamics.

mod eig;
mod evolve;
pub mod local;
mod matrix;
mod space;

use thiserror::Error;

pub use eig::{eig_low, EigOptions, SpectrumResult};
pub use evolve::{evolve, EvolutionResult, EvolveOptions, Generator};
pub use local::{annihilation, creation, number_op, projector, transition, LocalOp};
pub use matrix::{OperatorBuilder, OperatorMatrix};
pub use space::SpaceSpec;

/// Errors produced by the operator-algebra layer.
#[derive(Debug, Error)]
pub enum QopsError {
    /// A composite space could not be formed or a factor index was invalid.
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    /// Two operands live on different spaces or have incompatible dimensions.
    #[error("shape mismatch in {context}: expected dimension {expected}, got {got}")]
    ShapeMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },
    /// An operator required to be Hermitian is not, within tolerance.
    #[error("operator is not Hermitian (relative defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    /// The eigensolver failed to converge or broke down.
    #[error("eigensolver failure: {0}")]
    Solver(String),
    /// The time integrator failed to reach the requested accuracy.
    #[error("integrator failure: {0}")]
    Integrator(String),
    /// A caller-supplied argument was out of range or inconsistent.
    #[error("invalid input: {0}")]
    Input(String),
}

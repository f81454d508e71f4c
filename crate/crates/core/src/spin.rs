//! Pseudo-spin conventions shared by the microscopic and spin-model layers.
//!
//! The two long-lived atomic states span the spin-1/2: basis index 0 is |a>
//! (spin-down) and index 1 is |b> (spin-up), matching the (a, b, e) ordering
//! of the three-level atom. With that labeling
//!
//! ```text
//! sigma_z = |b><b| - |a><a| = diag(-1, +1)
//! sigma_x = |a><b| + |b><a|
//! sigma_y = i |a><b| - i |b><a|
//! ```
//!
//! which satisfies the cyclic algebra sigma_x sigma_y = i sigma_z.

use num_complex::Complex64;

use crate::qops::LocalOp;

/// Dimension of one pseudo-spin factor.
pub const SPIN_DIM: usize = 2;

/// sigma_x in the (|a>, |b>) basis.
pub fn spin_x() -> LocalOp {
    let mut op = LocalOp::zeros(SPIN_DIM);
    op.set(0, 1, Complex64::new(1.0, 0.0));
    op.set(1, 0, Complex64::new(1.0, 0.0));
    op
}

/// sigma_y in the (|a>, |b>) basis.
pub fn spin_y() -> LocalOp {
    let mut op = LocalOp::zeros(SPIN_DIM);
    op.set(0, 1, Complex64::new(0.0, 1.0));
    op.set(1, 0, Complex64::new(0.0, -1.0));
    op
}

/// sigma_z in the (|a>, |b>) basis: |a> is spin-down.
pub fn spin_z() -> LocalOp {
    let mut op = LocalOp::zeros(SPIN_DIM);
    op.set(0, 0, Complex64::new(-1.0, 0.0));
    op.set(1, 1, Complex64::new(1.0, 0.0));
    op
}

/// The Pauli operator along a given axis index (0 = x, 1 = y, 2 = z).
pub fn spin_axis(axis: usize) -> LocalOp {
    match axis {
        0 => spin_x(),
        1 => spin_y(),
        2 => spin_z(),
        _ => panic!("spin axis index must be 0, 1, or 2"),
    }
}

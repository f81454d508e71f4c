//! Composite Hilbert-space bookkeeping.
//!
//! A [`SpaceSpec`] is an ordered list of tensor factors (atom levels, pseudo-spins,
//! Fock ladders). Basis indexing is leftmost-major: the first factor varies slowest,
//! exactly like a nested `kron` with the first factor on the left.

use crate::qops::QopsError;

/// Ordered tensor-product structure of a composite Hilbert space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceSpec {
    factors: Vec<usize>,
    dim: usize,
}

impl SpaceSpec {
    /// Compose a space from per-factor dimensions. Every factor must have dimension >= 1.
    pub fn compose(factors: &[usize]) -> Result<SpaceSpec, QopsError> {
        if factors.is_empty() {
            return Err(QopsError::InvalidSpace("space needs at least one factor".into()));
        }
        let mut dim: usize = 1;
        for (i, &d) in factors.iter().enumerate() {
            if d == 0 {
                return Err(QopsError::InvalidSpace(format!("factor {i} has dimension 0")));
            }
            dim = dim
                .checked_mul(d)
                .ok_or_else(|| QopsError::InvalidSpace("total dimension overflows usize".into()))?;
        }
        Ok(SpaceSpec { factors: factors.to_vec(), dim })
    }

    /// Single-factor space.
    pub fn single(dim: usize) -> Result<SpaceSpec, QopsError> {
        SpaceSpec::compose(&[dim])
    }

    /// Total Hilbert-space dimension (product of factor dimensions).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Per-factor dimensions, leftmost factor first.
    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn n_factors(&self) -> usize {
        self.factors.len()
    }

    /// Product of the dimensions of factors strictly before `i`.
    pub fn dim_before(&self, i: usize) -> usize {
        self.factors[..i].iter().product()
    }

    /// Product of the dimensions of factors strictly after `i`.
    pub fn dim_after(&self, i: usize) -> usize {
        self.factors[i + 1..].iter().product()
    }

    /// Flatten per-factor occupation digits into a basis index (leftmost-major).
    pub fn basis_index(&self, digits: &[usize]) -> Result<usize, QopsError> {
        if digits.len() != self.factors.len() {
            return Err(QopsError::ShapeMismatch {
                context: "basis_index",
                expected: self.factors.len(),
                got: digits.len(),
            });
        }
        let mut idx = 0usize;
        for (f, (&d, &dim)) in digits.iter().zip(&self.factors).enumerate() {
            if d >= dim {
                return Err(QopsError::InvalidSpace(format!(
                    "digit {d} out of range for factor {f} (dim {dim})"
                )));
            }
            idx = idx * dim + d;
        }
        Ok(idx)
    }

    /// Split a basis index into per-factor digits (inverse of [`basis_index`]).
    pub fn basis_digits(&self, mut idx: usize) -> Vec<usize> {
        let mut digits = vec![0usize; self.factors.len()];
        for f in (0..self.factors.len()).rev() {
            digits[f] = idx % self.factors[f];
            idx /= self.factors[f];
        }
        digits
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_dims() {
        let s = SpaceSpec::compose(&[3, 2, 4]).unwrap();
        assert_eq!(s.dim(), 24);
        assert_eq!(s.dim_before(1), 3);
        assert_eq!(s.dim_after(1), 4);
        assert_eq!(s.n_factors(), 3);
    }

    #[test]
    fn zero_factor_rejected() {
        assert!(SpaceSpec::compose(&[2, 0]).is_err());
        assert!(SpaceSpec::compose(&[]).is_err());
    }

    #[test]
    fn leftmost_major_indexing() {
        let s = SpaceSpec::compose(&[2, 3]).unwrap();
        // index = first * 3 + second
        assert_eq!(s.basis_index(&[1, 2]).unwrap(), 5);
        assert_eq!(s.basis_digits(5), vec![1, 2]);
        for idx in 0..s.dim() {
            assert_eq!(s.basis_index(&s.basis_digits(idx)).unwrap(), idx);
        }
    }
}

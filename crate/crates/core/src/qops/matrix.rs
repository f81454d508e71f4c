//! Sparse operators on composite Hilbert spaces.
//!
//! [`OperatorMatrix`] is a compressed-sparse-row complex matrix tagged with the
//! [`SpaceSpec`] it acts on. Hamiltonians are assembled through
//! [`OperatorBuilder`], which accumulates embedded single-factor terms and
//! compresses once.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::qops::local::LocalOp;
use crate::qops::space::SpaceSpec;
use crate::qops::QopsError;

/// Sparse complex matrix over a composite space (CSR storage, sorted columns).
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    space: SpaceSpec,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    data: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn zero(space: &SpaceSpec) -> OperatorMatrix {
        OperatorMatrix {
            space: space.clone(),
            indptr: vec![0; space.dim() + 1],
            indices: Vec::new(),
            data: Vec::new(),
        }
    }

    pub fn identity(space: &SpaceSpec) -> OperatorMatrix {
        let dim = space.dim();
        OperatorMatrix {
            space: space.clone(),
            indptr: (0..=dim).collect(),
            indices: (0..dim).collect(),
            data: vec![Complex64::new(1.0, 0.0); dim],
        }
    }

    /// Embed a single-factor operator at tensor slot `factor`, identity elsewhere.
    pub fn embed(local: &LocalOp, factor: usize, space: &SpaceSpec) -> Result<OperatorMatrix, QopsError> {
        let mut b = OperatorBuilder::new(space.clone());
        b.add_embedded(local, factor, Complex64::new(1.0, 0.0))?;
        Ok(b.build())
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    /// Iterate over stored entries as (row, col, value).
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim()).flat_map(move |r| {
            self.row_range(r).map(move |k| (r, self.indices[k], self.data[k]))
        })
    }

    fn row_range(&self, r: usize) -> std::ops::Range<usize> {
        self.indptr[r]..self.indptr[r + 1]
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        for k in self.row_range(r) {
            if self.indices[k] == c {
                return self.data[k];
            }
        }
        Complex64::ZERO
    }

    fn check_same_space(&self, rhs: &OperatorMatrix, context: &'static str) -> Result<(), QopsError> {
        if self.space != rhs.space {
            return Err(QopsError::ShapeMismatch {
                context,
                expected: self.dim(),
                got: rhs.dim(),
            });
        }
        Ok(())
    }

    /// `self + coeff * rhs`.
    pub fn add_scaled(&self, coeff: Complex64, rhs: &OperatorMatrix) -> Result<OperatorMatrix, QopsError> {
        self.check_same_space(rhs, "add")?;
        let dim = self.dim();
        let mut indptr = Vec::with_capacity(dim + 1);
        let mut indices = Vec::with_capacity(self.nnz() + rhs.nnz());
        let mut data = Vec::with_capacity(self.nnz() + rhs.nnz());
        indptr.push(0);
        for r in 0..dim {
            let (mut i, mut j) = (self.indptr[r], rhs.indptr[r]);
            let (iend, jend) = (self.indptr[r + 1], rhs.indptr[r + 1]);
            while i < iend || j < jend {
                let (col, val) = if j >= jend || (i < iend && self.indices[i] < rhs.indices[j]) {
                    let out = (self.indices[i], self.data[i]);
                    i += 1;
                    out
                } else if i >= iend || rhs.indices[j] < self.indices[i] {
                    let out = (rhs.indices[j], coeff * rhs.data[j]);
                    j += 1;
                    out
                } else {
                    let out = (self.indices[i], self.data[i] + coeff * rhs.data[j]);
                    i += 1;
                    j += 1;
                    out
                };
                if val != Complex64::ZERO {
                    indices.push(col);
                    data.push(val);
                }
            }
            indptr.push(indices.len());
        }
        Ok(OperatorMatrix { space: self.space.clone(), indptr, indices, data })
    }

    pub fn add(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix, QopsError> {
        self.add_scaled(Complex64::new(1.0, 0.0), rhs)
    }

    pub fn sub(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix, QopsError> {
        self.add_scaled(Complex64::new(-1.0, 0.0), rhs)
    }

    pub fn scaled(&self, coeff: Complex64) -> OperatorMatrix {
        OperatorMatrix {
            space: self.space.clone(),
            indptr: self.indptr.clone(),
            indices: self.indices.clone(),
            data: self.data.iter().map(|v| v * coeff).collect(),
        }
    }

    /// Sparse-sparse product `self * rhs`.
    pub fn matmul(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix, QopsError> {
        self.check_same_space(rhs, "matmul")?;
        let dim = self.dim();
        let mut acc: Vec<Complex64> = vec![Complex64::ZERO; dim];
        let mut touched: Vec<usize> = Vec::new();
        let mut indptr = Vec::with_capacity(dim + 1);
        let mut indices = Vec::new();
        let mut data = Vec::new();
        indptr.push(0);
        for r in 0..dim {
            for k in self.row_range(r) {
                let a = self.data[k];
                let mid = self.indices[k];
                for l in rhs.row_range(mid) {
                    let c = rhs.indices[l];
                    if acc[c] == Complex64::ZERO {
                        touched.push(c);
                    }
                    acc[c] += a * rhs.data[l];
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                if acc[c] != Complex64::ZERO {
                    indices.push(c);
                    data.push(acc[c]);
                }
                acc[c] = Complex64::ZERO;
            }
            touched.clear();
            indptr.push(indices.len());
        }
        Ok(OperatorMatrix { space: self.space.clone(), indptr, indices, data })
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        let dim = self.dim();
        let mut counts = vec![0usize; dim + 1];
        for &c in &self.indices {
            counts[c + 1] += 1;
        }
        for i in 0..dim {
            counts[i + 1] += counts[i];
        }
        let mut indptr = counts.clone();
        let mut indices = vec![0usize; self.nnz()];
        let mut data = vec![Complex64::ZERO; self.nnz()];
        for r in 0..dim {
            for k in self.row_range(r) {
                let c = self.indices[k];
                let slot = indptr[c];
                indices[slot] = r;
                data[slot] = self.data[k].conj();
                indptr[c] += 1;
            }
        }
        OperatorMatrix { space: self.space.clone(), indptr: counts, indices, data }
    }

    /// y = H x (allocating).
    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim(), "matvec dimension mismatch");
        let mut y = vec![Complex64::ZERO; self.dim()];
        self.matvec_into(x, &mut y);
        y
    }

    pub fn matvec_into(&self, x: &[Complex64], y: &mut [Complex64]) {
        for r in 0..self.dim() {
            let mut acc = Complex64::ZERO;
            for k in self.row_range(r) {
                acc += self.data[k] * x[self.indices[k]];
            }
            y[r] = acc;
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ||H - H^dag||_F / ||H||_F (0 for the zero matrix).
    pub fn hermiticity_defect(&self) -> f64 {
        let norm = self.frobenius_norm();
        if norm == 0.0 {
            return 0.0;
        }
        let diff = self.sub(&self.adjoint()).expect("same space");
        diff.frobenius_norm() / norm
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// <psi| H |psi>.
    pub fn expectation(&self, psi: &[Complex64]) -> Complex64 {
        let hpsi = self.matvec(psi);
        psi.iter().zip(&hpsi).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = self.dim();
        let mut m = DMatrix::from_element(dim, dim, Complex64::ZERO);
        for (r, c, v) in self.entries() {
            m[(r, c)] = v;
        }
        m
    }

    /// Frobenius norm of `self - rhs`.
    pub fn frobenius_distance(&self, rhs: &OperatorMatrix) -> Result<f64, QopsError> {
        Ok(self.sub(rhs)?.frobenius_norm())
    }

    /// Frobenius norm of the commutator [self, rhs].
    pub fn commutator_norm(&self, rhs: &OperatorMatrix) -> Result<f64, QopsError> {
        let ab = self.matmul(rhs)?;
        let ba = rhs.matmul(self)?;
        ab.frobenius_distance(&ba)
    }
}

/// Accumulates (row, col, value) triplets and compresses to CSR once.
pub struct OperatorBuilder {
    space: SpaceSpec,
    entries: Vec<(usize, usize, Complex64)>,
}

impl OperatorBuilder {
    pub fn new(space: SpaceSpec) -> OperatorBuilder {
        OperatorBuilder { space, entries: Vec::new() }
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn add_entry(&mut self, r: usize, c: usize, v: Complex64) {
        if v != Complex64::ZERO {
            self.entries.push((r, c, v));
        }
    }

    /// Add `coeff * (I x ... x local x ... x I)` with `local` at slot `factor`.
    pub fn add_embedded(
        &mut self,
        local: &LocalOp,
        factor: usize,
        coeff: Complex64,
    ) -> Result<&mut Self, QopsError> {
        self.add_embedded_product(&[(factor, local)], coeff)
    }

    /// Add `coeff * Prod_i embed(local_i, factor_i)` for distinct factors.
    ///
    /// Because the factors are distinct the operators commute and the product is
    /// a single tensor-structured term; it is enumerated directly without
    /// intermediate sparse products.
    pub fn add_embedded_product(
        &mut self,
        parts: &[(usize, &LocalOp)],
        coeff: Complex64,
    ) -> Result<&mut Self, QopsError> {
        if coeff == Complex64::ZERO {
            return Ok(self);
        }
        let nf = self.space.n_factors();
        let mut seen = vec![false; nf];
        for &(f, local) in parts {
            if f >= nf {
                return Err(QopsError::InvalidSpace(format!(
                    "factor index {f} out of range ({nf} factors)"
                )));
            }
            if seen[f] {
                return Err(QopsError::InvalidSpace(format!(
                    "factor index {f} listed twice in embedded product"
                )));
            }
            seen[f] = true;
            if local.dim() != self.space.factors()[f] {
                return Err(QopsError::ShapeMismatch {
                    context: "embed",
                    expected: self.space.factors()[f],
                    got: local.dim(),
                });
            }
        }
        // Order parts by factor index so digit arithmetic is straightforward.
        let mut parts: Vec<(usize, &LocalOp)> = parts.to_vec();
        parts.sort_by_key(|&(f, _)| f);

        let dim = self.space.dim();
        let mut digits = vec![0usize; nf];
        for row in 0..dim {
            // Decompose the row index once.
            let mut idx = row;
            for f in (0..nf).rev() {
                digits[f] = idx % self.space.factors()[f];
                idx /= self.space.factors()[f];
            }
            // Recursively expand the (column, value) combinations across parts.
            self.expand_parts(row, &parts, 0, &digits, coeff);
        }
        Ok(self)
    }

    fn expand_parts(
        &mut self,
        row: usize,
        parts: &[(usize, &LocalOp)],
        depth: usize,
        digits: &[usize],
        val: Complex64,
    ) {
        if val == Complex64::ZERO {
            return;
        }
        if depth == parts.len() {
            // digits currently hold the column digits
            let mut col = 0usize;
            for (f, &d) in digits.iter().enumerate() {
                col = col * self.space.factors()[f] + d;
            }
            self.entries.push((row, col, val));
            return;
        }
        let (factor, local) = parts[depth];
        let local_row = digits[factor];
        // The embedded operator maps |local_col> -> |local_row> with amplitude
        // local[local_row, local_col]; enumerating columns of this row gives the
        // couplings out of the current basis state.
        let mut digits = digits.to_vec();
        for local_col in 0..local.dim() {
            let amp = local.get(local_row, local_col);
            if amp == Complex64::ZERO {
                continue;
            }
            digits[factor] = local_col;
            self.expand_parts(row, parts, depth + 1, &digits, val * amp);
        }
    }

    /// Compress accumulated triplets into CSR, summing duplicates.
    pub fn build(mut self) -> OperatorMatrix {
        let dim = self.space.dim();
        self.entries.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut indptr = vec![0usize; dim + 1];
        let mut indices = Vec::with_capacity(self.entries.len());
        let mut data: Vec<Complex64> = Vec::with_capacity(self.entries.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in self.entries.drain(..) {
            if last == Some((r, c)) {
                *data.last_mut().unwrap() += v;
            } else {
                indices.push(c);
                data.push(v);
                indptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..dim {
            indptr[r + 1] += indptr[r];
        }
        // Drop exact zeros produced by cancellation.
        let mut out_indptr = vec![0usize; dim + 1];
        let mut out_indices = Vec::with_capacity(indices.len());
        let mut out_data = Vec::with_capacity(data.len());
        for r in 0..dim {
            for k in indptr[r]..indptr[r + 1] {
                if data[k] != Complex64::ZERO {
                    out_indices.push(indices[k]);
                    out_data.push(data[k]);
                }
            }
            out_indptr[r + 1] = out_indices.len();
        }
        OperatorMatrix {
            space: self.space,
            indptr: out_indptr,
            indices: out_indices,
            data: out_data,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qops::local::{annihilation, creation, identity_local, pauli_x, pauli_y, pauli_z};
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn embed_matches_kron_order() {
        // Leftmost-major: embed at slot 0 acts on the slow index.
        let space = SpaceSpec::compose(&[2, 3]).unwrap();
        let sz = OperatorMatrix::embed(&pauli_z(), 0, &space).unwrap();
        // |0,k> -> +1, |1,k> -> -1
        for k in 0..3 {
            assert_eq!(sz.get(k, k), c(1.0));
            assert_eq!(sz.get(3 + k, 3 + k), c(-1.0));
        }
    }

    #[test]
    fn embeds_on_distinct_factors_commute() {
        let space = SpaceSpec::compose(&[2, 4, 2]).unwrap();
        let a = OperatorMatrix::embed(&pauli_x(), 0, &space).unwrap();
        let b = OperatorMatrix::embed(&annihilation(3), 1, &space).unwrap();
        assert_abs_diff_eq!(a.commutator_norm(&b).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn embedded_product_equals_sparse_product() {
        let space = SpaceSpec::compose(&[2, 3, 2]).unwrap();
        let mut b = OperatorBuilder::new(space.clone());
        b.add_embedded_product(&[(0, &pauli_y()), (2, &pauli_x())], c(2.0)).unwrap();
        let combined = b.build();
        let lhs = OperatorMatrix::embed(&pauli_y(), 0, &space).unwrap();
        let rhs = OperatorMatrix::embed(&pauli_x(), 2, &space).unwrap();
        let product = lhs.matmul(&rhs).unwrap().scaled(c(2.0));
        assert_abs_diff_eq!(combined.frobenius_distance(&product).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn adjoint_and_hermiticity() {
        let space = SpaceSpec::compose(&[4]).unwrap();
        let a = OperatorMatrix::embed(&annihilation(3), 0, &space).unwrap();
        let adag = OperatorMatrix::embed(&creation(3), 0, &space).unwrap();
        assert_abs_diff_eq!(a.adjoint().frobenius_distance(&adag).unwrap(), 0.0, epsilon = 1e-14);
        let h = a.add(&adag).unwrap();
        assert!(h.is_hermitian(1e-12));
        assert!(!a.is_hermitian(1e-12));
    }

    #[test]
    fn duplicate_triplets_sum_and_cancel() {
        let space = SpaceSpec::compose(&[2]).unwrap();
        let mut b = OperatorBuilder::new(space);
        b.add_entry(0, 1, c(1.5));
        b.add_entry(0, 1, c(-1.5));
        b.add_entry(1, 0, c(2.0));
        let m = b.build();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 0), c(2.0));
    }

    #[test]
    fn shape_mismatch_rejected() {
        let s1 = SpaceSpec::compose(&[2]).unwrap();
        let s2 = SpaceSpec::compose(&[3]).unwrap();
        let a = OperatorMatrix::identity(&s1);
        let b = OperatorMatrix::identity(&s2);
        assert!(a.add(&b).is_err());
        assert!(OperatorMatrix::embed(&identity_local(3), 0, &s1).is_err());
    }
}

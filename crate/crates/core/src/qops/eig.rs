//! Low-lying spectrum of Hermitian operators.
//!
//! Small problems are diagonalized densely; larger ones use a deflated Lanczos
//! iteration with full reorthogonalization and a deterministic start vector, so
//! repeated runs produce identical output.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::qops::matrix::OperatorMatrix;
use crate::qops::QopsError;

/// Options controlling [`eig_low`].
#[derive(Clone, Debug)]
pub struct EigOptions {
    /// Problems with dimension at or below this are solved densely.
    pub dense_threshold: usize,
    /// Relative residual tolerance for iterative convergence.
    pub tol: f64,
    /// Maximum number of restarted Lanczos cycles per eigenpair.
    pub max_restarts: usize,
    /// Krylov subspace dimension per cycle (defaults scale with `k`).
    pub krylov_dim: Option<usize>,
    /// Maximum tolerated relative Hermiticity defect of the input.
    pub hermiticity_tol: f64,
}

impl Default for EigOptions {
    fn default() -> EigOptions {
        EigOptions {
            dense_threshold: 4096,
            tol: 1e-10,
            max_restarts: 600,
            krylov_dim: None,
            hermiticity_tol: 1e-10,
        }
    }
}

/// Eigenvalues (ascending), eigenvectors, and exact residual norms.
#[derive(Clone, Debug)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<Complex64>>,
    pub residual_norms: Vec<f64>,
}

/// Compute the `k` lowest eigenpairs of a Hermitian operator.
pub fn eig_low(h: &OperatorMatrix, k: usize, opts: &EigOptions) -> Result<SpectrumResult, QopsError> {
    let dim = h.dim();
    if k == 0 || k > dim {
        return Err(QopsError::Input(format!(
            "requested {k} eigenpairs from a dimension-{dim} operator"
        )));
    }
    let defect = h.hermiticity_defect();
    if defect > opts.hermiticity_tol {
        return Err(QopsError::NotHermitian { defect });
    }
    let mut result = if dim <= opts.dense_threshold {
        dense_low(h, k)
    } else {
        lanczos_low(h, k, opts)?
    };
    result.residual_norms = (0..k)
        .map(|i| exact_residual(h, result.eigenvalues[i], &result.eigenvectors[i]))
        .collect();
    Ok(result)
}

fn exact_residual(h: &OperatorMatrix, theta: f64, x: &[Complex64]) -> f64 {
    let hx = h.matvec(x);
    hx.iter()
        .zip(x)
        .map(|(a, b)| (a - theta * b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn dense_low(h: &OperatorMatrix, k: usize) -> SpectrumResult {
    let eig = SymmetricEigen::new(h.to_dense());
    let mut order: Vec<usize> = (0..h.dim()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order[..k].iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors: Vec<Vec<Complex64>> = order[..k]
        .iter()
        .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
        .collect();
    SpectrumResult { eigenvalues, eigenvectors, residual_norms: Vec::new() }
}

// --- deterministic pseudo-random start vectors ------------------------------

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn unit_interval(u: u64) -> f64 {
    (u >> 11) as f64 / (1u64 << 53) as f64 - 0.5
}

fn seeded_vector(dim: usize, seed: u64) -> Vec<Complex64> {
    let mut state = seed ^ 0x6A09_E667_F3BC_C908;
    (0..dim)
        .map(|_| {
            let re = unit_interval(splitmix64(&mut state));
            let im = unit_interval(splitmix64(&mut state));
            Complex64::new(re, im)
        })
        .collect()
}

// --- vector helpers ---------------------------------------------------------

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn axpy(y: &mut [Complex64], alpha: Complex64, x: &[Complex64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn scale(a: &mut [Complex64], s: f64) {
    for x in a.iter_mut() {
        *x *= s;
    }
}

/// Classical Gram-Schmidt pass of `w` against each basis vector (applied twice
/// by callers for numerical safety).
fn orthogonalize(w: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for v in basis {
        let c = dot(v, w);
        axpy(w, -c, v);
    }
}

// --- deflated, restarted Lanczos ---------------------------------------------

fn lanczos_low(h: &OperatorMatrix, k: usize, opts: &EigOptions) -> Result<SpectrumResult, QopsError> {
    let dim = h.dim();
    let m_target = opts.krylov_dim.unwrap_or((2 * k + 24).max(48)).min(dim);
    let mut locked_vecs: Vec<Vec<Complex64>> = Vec::with_capacity(k);
    let mut locked_vals: Vec<f64> = Vec::with_capacity(k);
    let mut spectral_scale: f64 = 0.0;

    for round in 0..k {
        let complement = dim - locked_vecs.len();
        let m = m_target.min(complement);
        // Deterministic start vector, orthogonal to everything already locked.
        let mut v0 = Vec::new();
        for attempt in 0..64u64 {
            let mut cand = seeded_vector(dim, (round as u64) << 8 | attempt);
            orthogonalize(&mut cand, &locked_vecs);
            orthogonalize(&mut cand, &locked_vecs);
            let n = norm(&cand);
            if n > 1e-8 {
                scale(&mut cand, 1.0 / n);
                v0 = cand;
                break;
            }
        }
        if v0.is_empty() {
            return Err(QopsError::Solver(
                "could not construct a start vector orthogonal to the locked subspace".into(),
            ));
        }

        let mut converged = false;
        for _restart in 0..opts.max_restarts {
            // One Lanczos cycle from v0.
            let mut basis: Vec<Vec<Complex64>> = vec![v0.clone()];
            let mut alphas: Vec<f64> = Vec::with_capacity(m);
            let mut betas: Vec<f64> = Vec::with_capacity(m);
            let beta_last;
            let breakdown_tol = 1e-13 * spectral_scale.max(1.0);
            loop {
                let j = alphas.len();
                let mut w = h.matvec(&basis[j]);
                let alpha = dot(&basis[j], &w).re;
                axpy(&mut w, Complex64::new(-alpha, 0.0), &basis[j]);
                if j > 0 {
                    axpy(&mut w, Complex64::new(-betas[j - 1], 0.0), &basis[j - 1]);
                }
                // Full reorthogonalization (two passes).
                orthogonalize(&mut w, &locked_vecs);
                orthogonalize(&mut w, &basis);
                orthogonalize(&mut w, &locked_vecs);
                orthogonalize(&mut w, &basis);
                alphas.push(alpha);
                let beta = norm(&w);
                if alphas.len() == m || beta <= breakdown_tol {
                    beta_last = beta;
                    break;
                }
                betas.push(beta);
                scale(&mut w, 1.0 / beta);
                basis.push(w);
            }

            // Diagonalize the real symmetric tridiagonal projection.
            let t_dim = alphas.len();
            let mut t = DMatrix::<f64>::zeros(t_dim, t_dim);
            for (i, &a) in alphas.iter().enumerate() {
                t[(i, i)] = a;
            }
            for (i, &b) in betas.iter().enumerate() {
                t[(i, i + 1)] = b;
                t[(i + 1, i)] = b;
            }
            // Gershgorin bound on the projected operator tracks the spectral scale.
            for i in 0..t_dim {
                let mut radius = alphas[i].abs();
                if i > 0 {
                    radius += betas[i - 1];
                }
                if i < betas.len() {
                    radius += betas[i];
                }
                spectral_scale = spectral_scale.max(radius);
            }
            let teig = SymmetricEigen::new(t);
            let mut best = 0;
            for i in 1..t_dim {
                if teig.eigenvalues[i] < teig.eigenvalues[best] {
                    best = i;
                }
            }
            let theta = teig.eigenvalues[best];
            // Assemble the Ritz vector in the full space.
            let mut x = vec![Complex64::ZERO; dim];
            for (j, v) in basis.iter().enumerate() {
                axpy(&mut x, Complex64::new(teig.eigenvectors[(j, best)], 0.0), v);
            }
            orthogonalize(&mut x, &locked_vecs);
            let xn = norm(&x);
            if xn <= 1e-12 {
                return Err(QopsError::Solver("Lanczos produced a null Ritz vector".into()));
            }
            scale(&mut x, 1.0 / xn);

            let res = exact_residual(h, theta, &x);
            let exhausted = beta_last <= breakdown_tol && t_dim == complement;
            if res <= opts.tol * spectral_scale.max(1.0) || exhausted {
                locked_vals.push(theta);
                locked_vecs.push(x);
                converged = true;
                break;
            }
            v0 = x;
        }
        if !converged {
            return Err(QopsError::Solver(format!(
                "Lanczos failed to converge eigenpair {round} within {} restarts",
                opts.max_restarts
            )));
        }
    }

    // Deflation locks pairs in ascending order by construction, but enforce it.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| locked_vals[a].total_cmp(&locked_vals[b]));
    Ok(SpectrumResult {
        eigenvalues: order.iter().map(|&i| locked_vals[i]).collect(),
        eigenvectors: order.iter().map(|&i| locked_vecs[i].clone()).collect(),
        residual_norms: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qops::local::{number_op, pauli_x, pauli_z};
    use crate::qops::matrix::OperatorBuilder;
    use crate::qops::space::SpaceSpec;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn two_site_field_chain() -> (SpaceSpec, OperatorMatrix) {
        // H = sx(0) sx(1) + 0.3 (sz(0) + sz(1)) on two qubits.
        let space = SpaceSpec::compose(&[2, 2]).unwrap();
        let mut b = OperatorBuilder::new(space.clone());
        b.add_embedded_product(&[(0, &pauli_x()), (1, &pauli_x())], c(1.0)).unwrap();
        b.add_embedded(&pauli_z(), 0, c(0.3)).unwrap();
        b.add_embedded(&pauli_z(), 1, c(0.3)).unwrap();
        (space, b.build())
    }

    #[test]
    fn dense_matches_closed_form() {
        // sz basis: |00>,|11> couple, |01>,|10> couple, each a 2x2 block.
        let (_, h) = two_site_field_chain();
        let res = eig_low(&h, 4, &EigOptions::default()).unwrap();
        let root = (1.0f64 + 0.36).sqrt();
        let mut expected = vec![-root, -1.0, 1.0, root];
        expected.sort_by(|a, b| a.total_cmp(b));
        for (got, want) in res.eigenvalues.iter().zip(&expected) {
            assert_abs_diff_eq!(got, want, epsilon = 1e-12);
        }
        for r in &res.residual_norms {
            assert!(*r < 1e-10);
        }
    }

    #[test]
    fn iterative_matches_dense_including_degeneracies() {
        // Number operator on two modes: eigenvalue n0 + n1 has degeneracies.
        let space = SpaceSpec::compose(&[6, 6]).unwrap();
        let mut b = OperatorBuilder::new(space.clone());
        b.add_embedded(&number_op(5), 0, c(1.0)).unwrap();
        b.add_embedded(&number_op(5), 1, c(1.0)).unwrap();
        b.add_embedded_product(&[(0, &pauli_like_coupling()), (1, &pauli_like_coupling())], c(0.05))
            .unwrap();
        let h = b.build();
        let dense = eig_low(&h, 6, &EigOptions::default()).unwrap();
        let forced = EigOptions { dense_threshold: 1, ..EigOptions::default() };
        let iter = eig_low(&h, 6, &forced).unwrap();
        for (a, b) in dense.eigenvalues.iter().zip(&iter.eigenvalues) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-8);
        }
        for r in &iter.residual_norms {
            assert!(*r < 1e-7, "residual {r}");
        }
    }

    fn pauli_like_coupling() -> crate::qops::local::LocalOp {
        // Hermitian hopping-like coupling on a 6-level factor.
        let a = crate::qops::local::annihilation(5);
        a.add(&a.adjoint())
    }

    #[test]
    fn iterative_is_deterministic() {
        let space = SpaceSpec::compose(&[6, 6]).unwrap();
        let mut b = OperatorBuilder::new(space);
        b.add_embedded(&number_op(5), 0, c(1.0)).unwrap();
        b.add_embedded(&pauli_like_coupling(), 1, c(0.3)).unwrap();
        let h = b.build();
        let forced = EigOptions { dense_threshold: 1, ..EigOptions::default() };
        let first = eig_low(&h, 3, &forced).unwrap();
        let second = eig_low(&h, 3, &forced).unwrap();
        assert_eq!(first.eigenvalues, second.eigenvalues);
        assert_eq!(first.eigenvectors, second.eigenvectors);
    }

    #[test]
    fn non_hermitian_rejected() {
        let space = SpaceSpec::compose(&[3]).unwrap();
        let a = OperatorMatrix::embed(&crate::qops::local::annihilation(2), 0, &space).unwrap();
        match eig_low(&a, 1, &EigOptions::default()) {
            Err(QopsError::NotHermitian { .. }) => {}
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn k_out_of_range_rejected() {
        let space = SpaceSpec::compose(&[2]).unwrap();
        let h = OperatorMatrix::identity(&space);
        assert!(eig_low(&h, 0, &EigOptions::default()).is_err());
        assert!(eig_low(&h, 3, &EigOptions::default()).is_err());
    }
}

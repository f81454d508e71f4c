//! Dense single-factor operators (Pauli matrices, Fock ladder operators,
//! projectors, transitions) used as building blocks before embedding into a
//! composite space.

use num_complex::Complex64;

/// Small dense operator acting on a single tensor factor. Row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalOp {
    dim: usize,
    data: Vec<Complex64>,
}

impl LocalOp {
    pub fn zeros(dim: usize) -> LocalOp {
        LocalOp { dim, data: vec![Complex64::ZERO; dim * dim] }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> LocalOp {
        let mut op = LocalOp::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                op.data[r * dim + c] = f(r, c);
            }
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    /// Nonzero entries of row `r` as (column, value) pairs.
    pub fn row_entries(&self, r: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let dim = self.dim;
        self.data[r * dim..(r + 1) * dim]
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != Complex64::ZERO)
            .map(|(c, v)| (c, *v))
    }

    pub fn scaled(&self, c: Complex64) -> LocalOp {
        LocalOp { dim: self.dim, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, rhs: &LocalOp) -> LocalOp {
        assert_eq!(self.dim, rhs.dim, "LocalOp dimension mismatch");
        LocalOp {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn matmul(&self, rhs: &LocalOp) -> LocalOp {
        assert_eq!(self.dim, rhs.dim, "LocalOp dimension mismatch");
        let d = self.dim;
        let mut out = LocalOp::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == Complex64::ZERO {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] += a * rhs.data[k * d + c];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> LocalOp {
        LocalOp::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Identity on a `dim`-dimensional factor.
pub fn identity_local(dim: usize) -> LocalOp {
    LocalOp::from_fn(dim, |r, c| if r == c { re(1.0) } else { Complex64::ZERO })
}

/// Pauli x on a 2-dimensional factor.
pub fn pauli_x() -> LocalOp {
    LocalOp::from_fn(2, |r, c| if r != c { re(1.0) } else { Complex64::ZERO })
}

/// Pauli y on a 2-dimensional factor.
pub fn pauli_y() -> LocalOp {
    let mut op = LocalOp::zeros(2);
    op.set(0, 1, Complex64::new(0.0, -1.0));
    op.set(1, 0, Complex64::new(0.0, 1.0));
    op
}

/// Pauli z on a 2-dimensional factor: diag(+1, -1).
pub fn pauli_z() -> LocalOp {
    let mut op = LocalOp::zeros(2);
    op.set(0, 0, re(1.0));
    op.set(1, 1, re(-1.0));
    op
}

/// Projector |p><p| on a `dim`-dimensional factor.
pub fn projector(dim: usize, p: usize) -> LocalOp {
    assert!(p < dim, "projector level out of range");
    let mut op = LocalOp::zeros(dim);
    op.set(p, p, re(1.0));
    op
}

/// Transition |p><q| on a `dim`-dimensional factor.
pub fn transition(dim: usize, p: usize, q: usize) -> LocalOp {
    assert!(p < dim && q < dim, "transition level out of range");
    let mut op = LocalOp::zeros(dim);
    op.set(p, q, re(1.0));
    op
}

/// Bosonic annihilation operator truncated at occupation `n_max`
/// (factor dimension `n_max + 1`): a|n> = sqrt(n)|n-1>.
pub fn annihilation(n_max: usize) -> LocalOp {
    let dim = n_max + 1;
    let mut op = LocalOp::zeros(dim);
    for n in 1..dim {
        op.set(n - 1, n, re((n as f64).sqrt()));
    }
    op
}

/// Bosonic creation operator truncated at occupation `n_max`.
pub fn creation(n_max: usize) -> LocalOp {
    annihilation(n_max).adjoint()
}

/// Number operator diag(0, 1, ..., n_max).
pub fn number_op(n_max: usize) -> LocalOp {
    LocalOp::from_fn(n_max + 1, |r, c| if r == c { re(r as f64) } else { Complex64::ZERO })
}

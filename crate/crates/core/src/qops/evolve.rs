//! Norm-preserving time evolution under Hermitian generators.
//!
//! Static generators are propagated through their spectral decomposition
//! (exact up to rounding). Time-dependent generators use an exponential
//! midpoint rule whose substep count is doubled until the final state
//! stabilizes to the requested fidelity.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::qops::matrix::OperatorMatrix;
use crate::qops::QopsError;

/// The generator of the dynamics.
pub enum Generator<'a> {
    /// A constant Hamiltonian.
    Static(&'a OperatorMatrix),
    /// A time-dependent Hamiltonian sampled at arbitrary times.
    TimeDependent(&'a dyn Fn(f64) -> OperatorMatrix),
}

/// Options controlling [`evolve`].
#[derive(Clone, Debug)]
pub struct EvolveOptions {
    /// Convergence threshold on `1 - |<psi_n | psi_2n>|` when doubling substeps.
    pub fidelity_tol: f64,
    /// Maximum number of substep doublings per output interval.
    pub max_doublings: u32,
    /// Maximum tolerated relative Hermiticity defect of the generator.
    pub hermiticity_tol: f64,
    /// Maximum tolerated norm drift before renormalization (diagnostic guard).
    pub norm_tol: f64,
}

impl Default for EvolveOptions {
    fn default() -> EvolveOptions {
        EvolveOptions {
            fidelity_tol: 1e-8,
            max_doublings: 24,
            hermiticity_tol: 1e-10,
            norm_tol: 1e-8,
        }
    }
}

/// States sampled on the requested time grid.
#[derive(Clone, Debug)]
pub struct EvolutionResult {
    pub times: Vec<f64>,
    pub states: Vec<Vec<Complex64>>,
    /// Largest |norm - 1| observed before renormalization.
    pub max_norm_drift: f64,
}

/// Spectral decomposition used to apply exact exponentials of one operator.
struct Propagator {
    eigenvalues: Vec<f64>,
    basis: DMatrix<Complex64>,
}

impl Propagator {
    fn new(h: &OperatorMatrix, opts: &EvolveOptions) -> Result<Propagator, QopsError> {
        let defect = h.hermiticity_defect();
        if defect > opts.hermiticity_tol {
            return Err(QopsError::NotHermitian { defect });
        }
        let eig = SymmetricEigen::new(h.to_dense());
        Ok(Propagator {
            eigenvalues: eig.eigenvalues.iter().copied().collect(),
            basis: eig.eigenvectors,
        })
    }

    /// psi <- exp(-i H dt) psi.
    fn apply(&self, psi: &[Complex64], dt: f64) -> Vec<Complex64> {
        let v = DVector::from_column_slice(psi);
        let mut coeffs = self.basis.adjoint() * v;
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c *= Complex64::from_polar(1.0, -self.eigenvalues[i] * dt);
        }
        let out = &self.basis * coeffs;
        out.iter().copied().collect()
    }
}

fn fidelity(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>().norm()
}

fn check_grid(t_grid: &[f64]) -> Result<(), QopsError> {
    if t_grid.is_empty() {
        return Err(QopsError::Input("empty time grid".into()));
    }
    for w in t_grid.windows(2) {
        if !(w[1] >= w[0]) {
            return Err(QopsError::Input(format!(
                "time grid must be non-decreasing, got {} after {}",
                w[1], w[0]
            )));
        }
    }
    Ok(())
}

/// Evolve `psi0` from `t_grid[0]`, returning the state at every grid point.
pub fn evolve(
    generator: &Generator<'_>,
    psi0: &[Complex64],
    t_grid: &[f64],
    opts: &EvolveOptions,
) -> Result<EvolutionResult, QopsError> {
    check_grid(t_grid)?;
    let dim = psi0.len();
    let n0 = psi0.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if n0 == 0.0 {
        return Err(QopsError::Input("initial state has zero norm".into()));
    }
    let mut psi: Vec<Complex64> = psi0.iter().map(|x| x / n0).collect();
    let mut states = Vec::with_capacity(t_grid.len());
    states.push(psi.clone());
    let mut max_drift: f64 = (n0 - 1.0).abs().min(0.0); // the input norm is not drift
    max_drift = max_drift.max(0.0);

    match generator {
        Generator::Static(h) => {
            if h.dim() != dim {
                return Err(QopsError::ShapeMismatch {
                    context: "evolve",
                    expected: h.dim(),
                    got: dim,
                });
            }
            let prop = Propagator::new(h, opts)?;
            for w in t_grid.windows(2) {
                let dt = w[1] - w[0];
                psi = prop.apply(&psi, dt);
                max_drift = max_drift.max(renormalize(&mut psi, opts)?);
                states.push(psi.clone());
            }
        }
        Generator::TimeDependent(hfun) => {
            for w in t_grid.windows(2) {
                let (t0, t1) = (w[0], w[1]);
                if t1 > t0 {
                    psi = midpoint_interval(hfun, &psi, t0, t1, opts)?;
                    max_drift = max_drift.max(renormalize(&mut psi, opts)?);
                }
                states.push(psi.clone());
            }
        }
    }

    Ok(EvolutionResult { times: t_grid.to_vec(), states, max_norm_drift: max_drift })
}

fn renormalize(psi: &mut [Complex64], opts: &EvolveOptions) -> Result<f64, QopsError> {
    let n = psi.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let drift = (n - 1.0).abs();
    if drift > opts.norm_tol {
        return Err(QopsError::Integrator(format!(
            "norm drift {drift:.3e} exceeds tolerance {:.3e}",
            opts.norm_tol
        )));
    }
    for x in psi.iter_mut() {
        *x /= n;
    }
    Ok(drift)
}

/// Exponential midpoint rule over one output interval with substep doubling.
fn midpoint_interval(
    hfun: &dyn Fn(f64) -> OperatorMatrix,
    psi: &[Complex64],
    t0: f64,
    t1: f64,
    opts: &EvolveOptions,
) -> Result<Vec<Complex64>, QopsError> {
    let mut n_sub = 1usize;
    let mut previous: Option<Vec<Complex64>> = None;
    for _ in 0..=opts.max_doublings {
        let mut cur = psi.to_vec();
        let dt = (t1 - t0) / n_sub as f64;
        for s in 0..n_sub {
            let mid = t0 + (s as f64 + 0.5) * dt;
            let h = hfun(mid);
            if h.dim() != cur.len() {
                return Err(QopsError::ShapeMismatch {
                    context: "evolve",
                    expected: h.dim(),
                    got: cur.len(),
                });
            }
            let prop = Propagator::new(&h, opts)?;
            cur = prop.apply(&cur, dt);
        }
        if let Some(prev) = &previous {
            if 1.0 - fidelity(prev, &cur) < opts.fidelity_tol {
                return Ok(cur);
            }
        }
        previous = Some(cur);
        n_sub *= 2;
    }
    Err(QopsError::Integrator(format!(
        "midpoint integrator did not reach fidelity {:.1e} within {} doublings",
        opts.fidelity_tol, opts.max_doublings
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qops::local::{pauli_x, pauli_z};
    use crate::qops::matrix::OperatorBuilder;
    use crate::qops::space::SpaceSpec;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn rabi_hamiltonian(omega: f64) -> OperatorMatrix {
        let space = SpaceSpec::single(2).unwrap();
        let mut b = OperatorBuilder::new(space);
        b.add_embedded(&pauli_x(), 0, c(omega / 2.0)).unwrap();
        b.build()
    }

    #[test]
    fn static_rabi_oscillation() {
        let omega = 2.0 * std::f64::consts::PI;
        let h = rabi_hamiltonian(omega);
        let psi0 = [c(1.0), c(0.0)];
        let t_grid: Vec<f64> = (0..=40).map(|i| i as f64 * 0.025).collect();
        let res = evolve(&Generator::Static(&h), &psi0, &t_grid, &EvolveOptions::default()).unwrap();
        for (t, psi) in res.times.iter().zip(&res.states) {
            let p1 = psi[1].norm_sqr();
            assert_abs_diff_eq!(p1, (omega * t / 2.0).sin().powi(2), epsilon = 1e-10);
        }
        assert!(res.max_norm_drift < 1e-12);
    }

    #[test]
    fn time_dependent_constant_matches_static() {
        let h = rabi_hamiltonian(3.0);
        let psi0 = [c(0.6), Complex64::new(0.0, 0.8)];
        let t_grid = [0.0, 0.7, 1.9];
        let st = evolve(&Generator::Static(&h), &psi0, &t_grid, &EvolveOptions::default()).unwrap();
        let hfun = |_t: f64| h.clone();
        let td = evolve(
            &Generator::TimeDependent(&hfun),
            &psi0,
            &t_grid,
            &EvolveOptions::default(),
        )
        .unwrap();
        for (a, b) in st.states.iter().zip(&td.states) {
            let f = fidelity(a, b);
            assert!(1.0 - f < 1e-7, "fidelity {f}");
        }
    }

    #[test]
    fn ramped_drive_converges() {
        // H(t) = t * sz: exactly solvable, accumulated phase is t^2/2 per level.
        let space = SpaceSpec::single(2).unwrap();
        let mut b = OperatorBuilder::new(space);
        b.add_embedded(&pauli_z(), 0, c(1.0)).unwrap();
        let sz = b.build();
        let hfun = move |t: f64| sz.scaled(c(t));
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let psi0 = [c(inv_sqrt2), c(inv_sqrt2)];
        let t_grid = [0.0, 2.0];
        let res = evolve(
            &Generator::TimeDependent(&hfun),
            &psi0,
            &t_grid,
            &EvolveOptions::default(),
        )
        .unwrap();
        let phase = 2.0f64.powi(2) / 2.0;
        let expected = [
            inv_sqrt2 * Complex64::from_polar(1.0, -phase),
            inv_sqrt2 * Complex64::from_polar(1.0, phase),
        ];
        for (a, b) in res.states[1].iter().zip(&expected) {
            assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-7);
            assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-7);
        }
    }

    #[test]
    fn reversing_the_generator_returns_home() {
        let h = rabi_hamiltonian(1.3);
        let psi0 = [c(1.0), c(0.0)];
        let fwd = evolve(&Generator::Static(&h), &psi0, &[0.0, 2.4], &EvolveOptions::default())
            .unwrap();
        let neg = h.scaled(c(-1.0));
        let back = evolve(
            &Generator::Static(&neg),
            &fwd.states[1],
            &[0.0, 2.4],
            &EvolveOptions::default(),
        )
        .unwrap();
        let f = fidelity(&back.states[1], &psi0);
        assert!(1.0 - f < 1e-12);
    }

    #[test]
    fn bad_grid_rejected() {
        let h = rabi_hamiltonian(1.0);
        let psi0 = [c(1.0), c(0.0)];
        assert!(evolve(&Generator::Static(&h), &psi0, &[], &EvolveOptions::default()).is_err());
        assert!(
            evolve(&Generator::Static(&h), &psi0, &[1.0, 0.5], &EvolveOptions::default()).is_err()
        );
    }
}

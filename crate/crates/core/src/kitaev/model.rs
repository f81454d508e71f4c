//! Spin Hamiltonians on honeycomb clusters and their exact diagonalization.

use num_complex::Complex64;

use crate::effective::KitaevCouplings;
use crate::qops::{eig_low, EigOptions, OperatorBuilder, OperatorMatrix, SpaceSpec};
use crate::spin::{spin_axis, spin_z};

use super::lattice::HoneycombLattice;
use super::KitaevError;

/// Largest spin count accepted by the exact-diagonalization helpers.
pub const DEFAULT_ED_LIMIT: usize = 16;

fn spin_space(lattice: &HoneycombLattice, ed_limit: usize) -> Result<SpaceSpec, KitaevError> {
    if lattice.n_sites > ed_limit {
        return Err(KitaevError::Capacity(format!(
            "cluster has {} spins but the exact-diagonalization limit is {ed_limit}",
            lattice.n_sites
        )));
    }
    SpaceSpec::compose(&vec![2; lattice.n_sites]).map_err(KitaevError::from)
}

/// Assemble a bond-anisotropic spin Hamiltonian on a cluster.
///
/// On every bond of colour k the term
/// `xx[k] sx sx + yy[k] sy sy + zz[k] sz sz` acts on the bond's two sites,
/// and `field * sz` acts on every site. Coefficients are indexed by
/// [`crate::params::Bond::index`].
pub fn assemble_spin_hamiltonian(
    lattice: &HoneycombLattice,
    xx: &[f64; 3],
    yy: &[f64; 3],
    zz: &[f64; 3],
    field: f64,
    ed_limit: usize,
) -> Result<OperatorMatrix, KitaevError> {
    let space = spin_space(lattice, ed_limit)?;
    let mut builder = OperatorBuilder::new(space);

    for b in &lattice.bonds {
        let k = b.bond.index();
        for (coeff, axis) in [(xx[k], 0usize), (yy[k], 1), (zz[k], 2)] {
            if coeff == 0.0 {
                continue;
            }
            let op = spin_axis(axis);
            builder.add_embedded_product(&[(b.i, &op), (b.j, &op)], coeff.into())?;
        }
    }
    if field != 0.0 {
        let sz = spin_z();
        for site in 0..lattice.n_sites {
            builder.add_embedded(&sz, site, field.into())?;
        }
    }
    Ok(builder.build())
}

/// The anisotropic honeycomb Hamiltonian for a set of bond couplings: pure
/// `sx sx` on x bonds, `sy sy` on y bonds, the operative z coupling on z
/// bonds, and the uniform longitudinal field.
pub fn build_kitaev_hamiltonian(
    couplings: &KitaevCouplings,
    lattice: &HoneycombLattice,
    ed_limit: usize,
) -> Result<OperatorMatrix, KitaevError> {
    assemble_spin_hamiltonian(
        lattice,
        &[couplings.j_x, 0.0, 0.0],
        &[0.0, couplings.j_y, 0.0],
        &[0.0, 0.0, couplings.z_coupling()],
        couplings.b,
        ed_limit,
    )
}

/// The conserved hexagon operators of the cluster, one per plaquette.
pub fn plaquette_operators(
    lattice: &HoneycombLattice,
) -> Result<Vec<OperatorMatrix>, KitaevError> {
    let space = spin_space(lattice, DEFAULT_ED_LIMIT)?;
    let mut ops = Vec::new();
    for p in lattice.plaquettes()? {
        let mut builder = OperatorBuilder::new(space.clone());
        let locals: Vec<_> = p.axes.iter().map(|a| spin_axis(a.index())).collect();
        let parts: Vec<(usize, &crate::qops::LocalOp)> =
            p.sites.iter().copied().zip(locals.iter()).collect();
        builder.add_embedded_product(&parts, Complex64::new(1.0, 0.0))?;
        ops.push(builder.build());
    }
    Ok(ops)
}

/// Ground-state summary from exact diagonalization.
#[derive(Clone, Debug)]
pub struct GroundSummary {
    /// Lowest eigenvalue.
    pub e0: f64,
    /// Gap from the ground multiplet to the first distinct level (zero when
    /// the entire computed spectrum is degenerate with the ground state).
    pub gap: f64,
    /// Multiplicity of the ground level within `deg_tol`.
    pub degeneracy: usize,
    /// All computed eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
}

/// Ground energy, degeneracy, and gap of a Hamiltonian.
///
/// Starts with a small number of extremal eigenpairs and keeps doubling until
/// a level distinct from the ground multiplet appears (or the full dimension
/// is exhausted), so large ground-state degeneracies are handled correctly.
pub fn ed_ground_and_gap(
    h: &OperatorMatrix,
    opts: &EigOptions,
    deg_tol: f64,
) -> Result<GroundSummary, KitaevError> {
    let dim = h.dim();
    if !(deg_tol.is_finite() && deg_tol >= 0.0) {
        return Err(KitaevError::Input(format!(
            "degeneracy tolerance must be finite and non-negative, got {deg_tol}"
        )));
    }
    let mut k = 16.min(dim);
    loop {
        let result = eig_low(h, k, opts)?;
        let e0 = result.eigenvalues[0];
        let degeneracy = result
            .eigenvalues
            .iter()
            .take_while(|&&e| e - e0 <= deg_tol)
            .count();
        if degeneracy < k {
            return Ok(GroundSummary {
                e0,
                gap: result.eigenvalues[degeneracy] - e0,
                degeneracy,
                eigenvalues: result.eigenvalues,
            });
        }
        if k == dim {
            return Ok(GroundSummary { e0, gap: 0.0, degeneracy, eigenvalues: result.eigenvalues });
        }
        k = (2 * k).min(dim);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kitaev::lattice::{build_lattice, Boundary};

    #[test]
    fn capacity_gate_refuses_large_clusters() {
        let lattice = build_lattice(3, 3, Boundary::Periodic).unwrap();
        let couplings = KitaevCouplings::from_bonds(1.0, 1.0, 1.0, 0.0);
        assert!(matches!(
            build_kitaev_hamiltonian(&couplings, &lattice, DEFAULT_ED_LIMIT),
            Err(KitaevError::Capacity(_))
        ));
    }

    #[test]
    fn single_z_dimer_spectrum_is_exact() {
        // One open cell: H = J sz sz on two spins -> eigenvalues {-J, -J, J, J}.
        let lattice = build_lattice(1, 1, Boundary::Open).unwrap();
        let couplings = KitaevCouplings::from_bonds(0.7, 0.3, 1.3, 0.0);
        let h = build_kitaev_hamiltonian(&couplings, &lattice, DEFAULT_ED_LIMIT).unwrap();
        let summary = ed_ground_and_gap(&h, &EigOptions::default(), 1e-9).unwrap();
        assert!((summary.e0 + 1.3).abs() < 1e-10);
        assert_eq!(summary.degeneracy, 2);
        assert!((summary.gap - 2.6).abs() < 1e-10);
    }

    #[test]
    fn field_shifts_the_dimer_levels() {
        // H = J sz sz + b (sz1 + sz2): levels J +/- 2b and -J (twice).
        let lattice = build_lattice(1, 1, Boundary::Open).unwrap();
        let couplings = KitaevCouplings::from_bonds(0.0, 0.0, 1.0, 0.25);
        let h = build_kitaev_hamiltonian(&couplings, &lattice, DEFAULT_ED_LIMIT).unwrap();
        let summary = ed_ground_and_gap(&h, &EigOptions::default(), 1e-9).unwrap();
        assert!((summary.e0 + 1.0).abs() < 1e-10);
        assert_eq!(summary.degeneracy, 2);
        assert!((summary.gap - (1.0 - 0.5 + 1.0)).abs() < 1e-10);
    }

    #[test]
    fn degeneracy_doubling_sees_past_sixteen_levels() {
        // 2 x 2 dimer limit: every z dimer contributes {-J, -J}, so the
        // ground level of 4 decoupled dimers is 16-fold degenerate.
        let lattice = build_lattice(2, 2, Boundary::Periodic).unwrap();
        let couplings = KitaevCouplings::from_bonds(0.0, 0.0, 1.0, 0.0);
        let h = build_kitaev_hamiltonian(&couplings, &lattice, DEFAULT_ED_LIMIT).unwrap();
        let summary = ed_ground_and_gap(&h, &EigOptions::default(), 1e-9).unwrap();
        assert!((summary.e0 + 4.0).abs() < 1e-9);
        assert_eq!(summary.degeneracy, 16);
        assert!((summary.gap - 2.0).abs() < 1e-9);
    }
}

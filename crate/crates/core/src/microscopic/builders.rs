//! Full microscopic Hamiltonians for a chain of driven atom-cavity sites.
//!
//! Each site carries one three-level atom (levels a, b, e in that basis
//! order) and three photon modes (one per bond colour). Sites are laid out
//! along an abstract chain; photons tunnel between like-coloured modes of
//! neighbouring sites. This is the unreduced model: the excited level and
//! all photon states are kept explicitly.

use num_complex::Complex64;

use crate::microscopic::{FockCutoff, MicroscopicError};
use crate::params::{Bond, SystemParams};
use crate::qops::{
    annihilation, creation, number_op, projector, transition, LocalOp, OperatorBuilder,
    OperatorMatrix, SpaceSpec,
};

/// Number of factors contributed by one site (atom + three modes).
const FACTORS_PER_SITE: usize = 4;

/// Factor index of the atom at `site`.
pub fn atom_factor(site: usize) -> usize {
    FACTORS_PER_SITE * site
}

/// Factor index of the `bond`-coloured mode at `site`.
pub fn mode_factor(site: usize, bond: Bond) -> usize {
    FACTORS_PER_SITE * site + 1 + bond.index()
}

/// Tensor-product space for `n_sites` full sites: per site one three-level
/// atom followed by the x, y, z photon modes.
pub fn chain_space(cutoff: &FockCutoff, n_sites: usize) -> Result<SpaceSpec, MicroscopicError> {
    if n_sites == 0 {
        return Err(MicroscopicError::Input(
            "a chain needs at least one site".into(),
        ));
    }
    let mut dims = Vec::with_capacity(FACTORS_PER_SITE * n_sites);
    for _ in 0..n_sites {
        dims.push(3);
        for bond in Bond::ALL {
            dims.push(cutoff.dim(bond));
        }
    }
    SpaceSpec::compose(&dims).map_err(MicroscopicError::from)
}

fn sigma_ee() -> LocalOp {
    projector(3, 2)
}

fn sigma_bb() -> LocalOp {
    projector(3, 1)
}

/// |e><l| on the three-level atom, l = 0 (a) or 1 (b).
fn sigma_el(l: usize) -> LocalOp {
    transition(3, 2, l)
}

/// Drive-free part of the chain Hamiltonian: atomic level energies, photon
/// energies, and photon tunnelling between neighbouring sites.
pub fn build_bare_hamiltonians(
    params: &SystemParams,
    cutoff: &FockCutoff,
    n_sites: usize,
) -> Result<OperatorMatrix, MicroscopicError> {
    params.validate().map_err(|e| MicroscopicError::Input(e.to_string()))?;
    let space = chain_space(cutoff, n_sites)?;
    let mut builder = OperatorBuilder::new(space);

    for site in 0..n_sites {
        let atom = atom_factor(site);
        builder.add_embedded(&sigma_ee(), atom, Complex64::new(params.omega_ea, 0.0))?;
        builder.add_embedded(&sigma_bb(), atom, Complex64::new(params.omega_ba, 0.0))?;
        for bond in Bond::ALL {
            let mode = params.mode(bond);
            builder.add_embedded(
                &number_op(cutoff.n[bond.index()]),
                mode_factor(site, bond),
                Complex64::new(mode.nu, 0.0),
            )?;
        }
    }

    // Photon tunnelling along the chain, colour by colour.
    for site in 0..n_sites.saturating_sub(1) {
        for bond in Bond::ALL {
            let t = params.mode(bond).t;
            if t == 0.0 {
                continue;
            }
            let n = cutoff.n[bond.index()];
            let here = mode_factor(site, bond);
            let there = mode_factor(site + 1, bond);
            let hop = Complex64::new(t, 0.0);
            builder.add_embedded_product(&[(here, &creation(n)), (there, &annihilation(n))], hop)?;
            builder.add_embedded_product(&[(here, &annihilation(n)), (there, &creation(n))], hop)?;
        }
    }

    Ok(builder.build())
}

/// Interaction Hamiltonian of one site at laboratory time `time`: the
/// atom-cavity exchange terms plus the two classical drives in the lab
/// frame. The result is Hermitian but explicitly time dependent through the
/// drive phases.
pub fn build_interaction_hamiltonian(
    params: &SystemParams,
    cutoff: &FockCutoff,
    n_sites: usize,
    site: usize,
    time: f64,
) -> Result<OperatorMatrix, MicroscopicError> {
    params.validate().map_err(|e| MicroscopicError::Input(e.to_string()))?;
    if site >= n_sites {
        return Err(MicroscopicError::Input(format!(
            "site index {site} out of range for a {n_sites}-site chain"
        )));
    }
    let space = chain_space(cutoff, n_sites)?;
    let mut builder = OperatorBuilder::new(space);
    let atom = atom_factor(site);

    // Cavity couplings: g_l^k a_k |e><l| + h.c. for l in {a, b}.
    for bond in Bond::ALL {
        let mode = params.mode(bond);
        let n = cutoff.n[bond.index()];
        let factor = mode_factor(site, bond);
        for (l, g) in [(0usize, mode.g_a), (1usize, mode.g_b)] {
            if g == 0.0 {
                continue;
            }
            let coeff = Complex64::new(g, 0.0);
            builder.add_embedded_product(&[(atom, &sigma_el(l)), (factor, &annihilation(n))], coeff)?;
            builder.add_embedded_product(
                &[(atom, &sigma_el(l).adjoint()), (factor, &creation(n))],
                coeff,
            )?;
        }
    }

    // Classical drives: (1/2)(Omega_l1 e^{-i nu1 t} + Omega_l2 e^{-i nu2 t}) |e><l| + h.c.
    let phase1 = Complex64::from_polar(0.5, -params.nu1 * time);
    let phase2 = Complex64::from_polar(0.5, -params.nu2 * time);
    for (l, omega1, omega2) in [
        (0usize, params.omega_a1, params.omega_a2),
        (1usize, params.omega_b1, params.omega_b2),
    ] {
        let amp = phase1 * omega1 + phase2 * omega2;
        if amp == Complex64::ZERO {
            continue;
        }
        builder.add_embedded(&sigma_el(l), atom, amp)?;
        builder.add_embedded(&sigma_el(l).adjoint(), atom, amp.conj())?;
    }

    Ok(builder.build())
}

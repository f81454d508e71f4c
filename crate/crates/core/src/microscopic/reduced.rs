//! Reduced site and bond models after eliminating the excited level.
//!
//! In the large-detuning regime the excited atomic level only enters
//! virtually. Integrating it out leaves a two-level (pseudo-spin) atom per
//! site whose states are light-shifted, photon modes whose occupation shifts
//! the atomic energies, and photon-assisted spin amplitudes:
//!
//! * x/y modes mediate two-photon (Raman) spin flips: one laser photon in,
//!   one cavity photon out, with amplitudes `A_k1` (spin raising) and `A_k2`
//!   (spin lowering);
//! * the z mode is displaced conditionally on the spin state, with
//!   state-dependent emission amplitudes `A_z1` (spin down) and `A_z2`
//!   (spin up).
//!
//! A two-site bond model adds photon tunnelling between the like-coloured
//! modes of neighbouring sites; virtual photon exchange then generates the
//! spin-spin couplings that [`extract_bond_coupling`] measures from an exact
//! spectrum.

use num_complex::Complex64;

use crate::effective::{derive_scales, DerivedScales, EQUALITY_TOL};
use crate::microscopic::{FockCutoff, MicroscopicError};
use crate::params::{Bond, SystemParams};
use crate::qops::{
    annihilation, creation, number_op, projector, transition, OperatorBuilder, OperatorMatrix,
    SpaceSpec, SpectrumResult,
};
use crate::spin::spin_axis;

/// Tensor-product space of one reduced site: pseudo-spin followed by the
/// x, y, z photon modes.
pub fn site_space(cutoff: &FockCutoff) -> Result<SpaceSpec, MicroscopicError> {
    SpaceSpec::compose(&[2, cutoff.dim(Bond::X), cutoff.dim(Bond::Y), cutoff.dim(Bond::Z)])
        .map_err(MicroscopicError::from)
}

/// The photon-conditioned shifts of the two spin states must agree for a mode
/// to act as a spin-independent energy reservoir; their mean is the common
/// shift used by the model.
fn common_lambda(scales: &DerivedScales, bond: Bond) -> Result<f64, MicroscopicError> {
    let i = bond.index();
    let la = scales.lambda_a[i];
    let lb = scales.lambda_b[i];
    let scale = la.abs().max(lb.abs());
    if scale > 0.0 && (la - lb).abs() > EQUALITY_TOL * scale {
        return Err(MicroscopicError::Condition(format!(
            "photon-conditioned shifts of mode {} differ between spin states \
             (lambda_a = {la}, lambda_b = {lb}); the couplings must satisfy \
             g_a^2 / delta_a = g_b^2 / delta_b",
            bond.label()
        )));
    }
    Ok(scales.lambda[i])
}

/// Light shifts of the two spin states (both lasers, second order).
fn add_stark_terms(
    builder: &mut OperatorBuilder,
    scales: &DerivedScales,
    atom: usize,
) -> Result<(), MicroscopicError> {
    let shift_a = -(scales.eta_a1 + scales.eta_a2);
    let shift_b = -(scales.eta_b1 + scales.eta_b2);
    builder.add_embedded(&projector(2, 0), atom, Complex64::new(shift_a, 0.0))?;
    builder.add_embedded(&projector(2, 1), atom, Complex64::new(shift_b, 0.0))?;
    Ok(())
}

/// One mode's reduced terms at one site: the photon-conditioned shift and the
/// photon-assisted spin amplitudes. `amp_sign` multiplies both amplitudes
/// (the physical sign convention of the couplings at this site).
fn add_mode_terms(
    builder: &mut OperatorBuilder,
    scales: &DerivedScales,
    bond: Bond,
    n_max: usize,
    atom: usize,
    mode: usize,
    amp_sign: f64,
) -> Result<f64, MicroscopicError> {
    let lambda = common_lambda(scales, bond)?;
    builder.add_embedded(&number_op(n_max), mode, Complex64::new(-lambda, 0.0))?;

    let a1 = amp_sign * scales.a_1[bond.index()];
    let a2 = amp_sign * scales.a_2[bond.index()];
    let raise = creation(n_max);
    let lower = annihilation(n_max);
    match bond {
        Bond::X | Bond::Y => {
            // Raman flips: -(A1 |b><a| + A2 |a><b|) a^dag + h.c.
            let up = transition(2, 1, 0);
            let down = transition(2, 0, 1);
            builder.add_embedded_product(&[(atom, &up), (mode, &raise)], (-a1).into())?;
            builder.add_embedded_product(&[(atom, &down), (mode, &lower)], (-a1).into())?;
            builder.add_embedded_product(&[(atom, &down), (mode, &raise)], (-a2).into())?;
            builder.add_embedded_product(&[(atom, &up), (mode, &lower)], (-a2).into())?;
        }
        Bond::Z => {
            // Conditional displacement: -(A1 |a><a| + A2 |b><b|)(a^dag + a).
            let pa = projector(2, 0);
            let pb = projector(2, 1);
            for quad in [&raise, &lower] {
                builder.add_embedded_product(&[(atom, &pa), (mode, quad)], (-a1).into())?;
                builder.add_embedded_product(&[(atom, &pb), (mode, quad)], (-a2).into())?;
            }
        }
    }
    Ok(lambda)
}

/// Reduced Hamiltonian of one isolated site (no tunnelling).
///
/// With `include_cross_mode` the photon-number-preserving Rayleigh exchange
/// between different modes of the same site is kept as well; it is a
/// second-order remnant that does not affect zero-photon energies and is
/// normally negligible at the operating point.
pub fn build_reduced_site(
    params: &SystemParams,
    cutoff: &FockCutoff,
    include_cross_mode: bool,
) -> Result<OperatorMatrix, MicroscopicError> {
    let scales = derive_scales(params)?;
    let space = site_space(cutoff)?;
    let mut builder = OperatorBuilder::new(space);

    add_stark_terms(&mut builder, &scales, 0)?;
    for bond in Bond::ALL {
        add_mode_terms(
            &mut builder,
            &scales,
            bond,
            cutoff.n[bond.index()],
            0,
            1 + bond.index(),
            1.0,
        )?;
    }

    if include_cross_mode {
        // -(1/2) c_alpha^m c_alpha^n (1/delta_alpha^m + 1/delta_alpha^n)
        // |alpha><alpha| a_m^dag a_n summed over ordered pairs m != n.
        for m in Bond::ALL {
            for n in Bond::ALL {
                if m == n {
                    continue;
                }
                let (im, inn) = (m.index(), n.index());
                let dam = params.delta_a(m);
                let dan = params.delta_a(n);
                let dbm = params.delta_b(m);
                let dbn = params.delta_b(n);
                let ca = -0.5
                    * params.cavity[im].g_a
                    * params.cavity[inn].g_a
                    * (1.0 / dam + 1.0 / dan);
                let cb = -0.5
                    * params.cavity[im].g_b
                    * params.cavity[inn].g_b
                    * (1.0 / dbm + 1.0 / dbn);
                let hop_up = creation(cutoff.n[im]);
                let hop_down = annihilation(cutoff.n[inn]);
                builder.add_embedded_product(
                    &[(0, &projector(2, 0)), (1 + im, &hop_up), (1 + inn, &hop_down)],
                    ca.into(),
                )?;
                builder.add_embedded_product(
                    &[(0, &projector(2, 1)), (1 + im, &hop_up), (1 + inn, &hop_down)],
                    cb.into(),
                )?;
            }
        }
    }

    Ok(builder.build())
}

/// A reduced two-site model of one bond.
#[derive(Clone, Debug)]
pub struct BondModel {
    /// Bond direction being modelled.
    pub bond: Bond,
    /// Space layout: spin 1, mode 1, spin 2, mode 2.
    pub space: SpaceSpec,
    /// The reduced two-site Hamiltonian.
    pub hamiltonian: OperatorMatrix,
    /// Photon cutoff of the shared mode colour.
    pub n_max: usize,
    /// Common photon-conditioned shift of the mode.
    pub lambda: f64,
    /// Photon-assisted amplitudes (A_k1, A_k2).
    pub amplitudes: [f64; 2],
    /// Photon tunnelling rate between the two modes.
    pub tunneling: f64,
}

/// Assemble the two-site bond Hamiltonian with per-site amplitude signs.
fn bond_hamiltonian_with_site_signs(
    params: &SystemParams,
    cutoff: &FockCutoff,
    bond: Bond,
    signs: [f64; 2],
) -> Result<(SpaceSpec, OperatorMatrix, f64), MicroscopicError> {
    let scales = derive_scales(params)?;
    let n = cutoff.n[bond.index()];
    let dim = n + 1;
    let space = SpaceSpec::compose(&[2, dim, 2, dim])?;
    let mut builder = OperatorBuilder::new(space.clone());

    let mut lambda = 0.0;
    for site in 0..2 {
        let atom = 2 * site;
        let mode = 2 * site + 1;
        add_stark_terms(&mut builder, &scales, atom)?;
        lambda = add_mode_terms(&mut builder, &scales, bond, n, atom, mode, signs[site])?;
    }

    let t = params.mode(bond).t;
    if t != 0.0 {
        builder.add_embedded_product(&[(1, &creation(n)), (3, &annihilation(n))], t.into())?;
        builder.add_embedded_product(&[(1, &annihilation(n)), (3, &creation(n))], t.into())?;
    }

    Ok((space, builder.build(), lambda))
}

/// Build the reduced model of a single bond: two sites, the shared mode
/// colour on each, and photon tunnelling between them. Spectator modes do
/// not couple to the bond dynamics and are omitted.
pub fn build_bond_model(
    params: &SystemParams,
    cutoff: &FockCutoff,
    bond: Bond,
) -> Result<BondModel, MicroscopicError> {
    let scales = derive_scales(params)?;
    let (space, hamiltonian, lambda) =
        bond_hamiltonian_with_site_signs(params, cutoff, bond, [1.0, 1.0])?;
    Ok(BondModel {
        bond,
        space,
        hamiltonian,
        n_max: cutoff.n[bond.index()],
        lambda,
        amplitudes: [scales.a_1[bond.index()], scales.a_2[bond.index()]],
        tunneling: params.mode(bond).t,
    })
}

/// Effective two-spin couplings measured from a bond-model spectrum.
#[derive(Clone, Copy, Debug)]
pub struct BondCoupling {
    /// Coefficient of the bond-type Pauli pair (sigma^k sigma^k).
    pub j_eff: f64,
    /// Coefficient of the uniform longitudinal field (sigma^z_1 + sigma^z_2)/2 each.
    pub b_eff: f64,
    /// Spin-independent energy offset of the dressed quadruplet.
    pub offset: f64,
    /// Frobenius norm of the part of the dressed Hamiltonian not captured by
    /// the offset, field, and bond terms.
    pub residual: f64,
    /// Zero-photon weight of each selected dressed state (ordered by energy).
    pub zero_photon_weights: [f64; 4],
    /// Distance of the nearest photon-carrying level to the dressed
    /// quadruplet, in units of the quadruplet's spread. `None` when the
    /// spectrum contains only the four dressed states.
    pub separation_ratio: Option<f64>,
}

/// Minimum zero-photon weight for a dressed state to count as spin-like.
const MIN_ZERO_PHOTON_WEIGHT: f64 = 0.99;
/// Minimum gap-to-spread ratio separating the quadruplet from photon levels.
const MIN_SEPARATION_RATIO: f64 = 10.0;

/// Identify the four dressed zero-photon states in `spectrum` and project the
/// Hamiltonian they span onto the two-spin operator basis
/// {1, sigma^z_1 + sigma^z_2, sigma^k_1 sigma^k_2}.
///
/// `spectrum` must contain the full spectrum of the bond model (or at least
/// every level in the energy range of interest); the dressed states are found
/// by their zero-photon weight, not by energy, because photon-carrying levels
/// lie below them.
pub fn extract_bond_coupling(
    model: &BondModel,
    spectrum: &SpectrumResult,
) -> Result<BondCoupling, MicroscopicError> {
    let dim = model.space.dim();
    let n_levels = spectrum.eigenvalues.len();
    if n_levels < 4 {
        return Err(MicroscopicError::Input(format!(
            "need at least 4 eigenpairs to isolate the dressed quadruplet, got {n_levels}"
        )));
    }
    if spectrum.eigenvectors.len() != n_levels {
        return Err(MicroscopicError::Input(
            "spectrum has mismatched eigenvalue/eigenvector counts".into(),
        ));
    }

    // Zero-photon basis states, ordered (s1, s2) = (a,a), (a,b), (b,a), (b,b).
    let mut zero_idx = [0usize; 4];
    for (pos, (s1, s2)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
        zero_idx[pos] = model.space.basis_index(&[s1, 0, s2, 0])?;
    }

    let mut weights = Vec::with_capacity(n_levels);
    for (level, vec) in spectrum.eigenvectors.iter().enumerate() {
        if vec.len() != dim {
            return Err(MicroscopicError::Input(format!(
                "eigenvector {level} has length {} but the model dimension is {dim}",
                vec.len()
            )));
        }
        let w: f64 = zero_idx.iter().map(|&i| vec[i].norm_sqr()).sum();
        weights.push((level, w));
    }
    weights.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));

    let mut selected: Vec<usize> = weights[..4].iter().map(|&(level, _)| level).collect();
    for &(level, w) in &weights[..4] {
        if w < MIN_ZERO_PHOTON_WEIGHT {
            return Err(MicroscopicError::Regime(format!(
                "dressed state {level} has zero-photon weight {w:.6} < {MIN_ZERO_PHOTON_WEIGHT}; \
                 the photon admixture is too strong for a spin-model reading"
            )));
        }
    }
    selected.sort_by(|&a, &b| {
        spectrum.eigenvalues[a]
            .partial_cmp(&spectrum.eigenvalues[b])
            .unwrap()
    });

    let energies: Vec<f64> = selected.iter().map(|&l| spectrum.eigenvalues[l]).collect();
    let mean = energies.iter().sum::<f64>() / 4.0;
    let spread = energies[3] - energies[0];

    let separation_ratio = if n_levels > 4 {
        let sep = spectrum
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|(l, _)| !selected.contains(l))
            .map(|(_, &e)| (e - mean).abs())
            .fold(f64::INFINITY, f64::min);
        let ratio = sep / spread.max(1e-300);
        if ratio < MIN_SEPARATION_RATIO {
            return Err(MicroscopicError::Regime(format!(
                "nearest photon-carrying level sits {ratio:.2} quadruplet-widths away \
                 (need >= {MIN_SEPARATION_RATIO}); the spin sector is not energetically isolated"
            )));
        }
        Some(ratio)
    } else {
        None
    };

    let mut zero_photon_weights = [0.0; 4];
    for (pos, &level) in selected.iter().enumerate() {
        let vec = &spectrum.eigenvectors[level];
        zero_photon_weights[pos] = zero_idx.iter().map(|&i| vec[i].norm_sqr()).sum();
    }

    // Orthonormal basis of the dressed subspace. The selected eigenvectors are
    // already near-orthonormal; one Gram-Schmidt pass guards against solver
    // roundoff inside nearly degenerate pairs.
    let mut subspace: Vec<Vec<Complex64>> = Vec::with_capacity(4);
    for &level in &selected {
        let mut v = spectrum.eigenvectors[level].clone();
        for prev in &subspace {
            let overlap: Complex64 = prev.iter().zip(&v).map(|(p, c)| p.conj() * c).sum();
            for (x, p) in v.iter_mut().zip(prev) {
                *x -= overlap * p;
            }
        }
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            return Err(MicroscopicError::Regime(
                "selected dressed states are linearly dependent; the spectrum \
                 does not contain four distinct spin-like levels"
                    .into(),
            ));
        }
        for x in v.iter_mut() {
            *x /= norm;
        }
        subspace.push(v);
    }

    // Spin-aligned frame inside the dressed subspace: project each bare
    // two-spin basis state onto the subspace and orthonormalize. Unlike a
    // reconstruction from per-level energies, matrix elements taken in this
    // frame are invariant under remixing of nearly degenerate dressed states,
    // whose individual eigenvectors the solver cannot pin down.
    let mut frame: Vec<Vec<Complex64>> = Vec::with_capacity(4);
    for &i in &zero_idx {
        let mut p = vec![Complex64::ZERO; dim];
        for v in &subspace {
            let amp = v[i].conj();
            for (ps, vs) in p.iter_mut().zip(v) {
                *ps += amp * vs;
            }
        }
        for prev in &frame {
            let overlap: Complex64 = prev.iter().zip(&p).map(|(q, c)| q.conj() * c).sum();
            for (x, q) in p.iter_mut().zip(prev) {
                *x -= overlap * q;
            }
        }
        let norm = p.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            return Err(MicroscopicError::Regime(
                "zero-photon projections of the dressed states are degenerate; \
                 they do not span the two-spin space"
                    .into(),
            ));
        }
        for x in p.iter_mut() {
            *x /= norm;
        }
        frame.push(p);
    }

    // Dressed Hamiltonian: restriction of the bond Hamiltonian to the dressed
    // subspace, expressed in the spin-aligned frame, then hermitized to remove
    // roundoff asymmetry.
    let mut h_eff = [[Complex64::ZERO; 4]; 4];
    for c in 0..4 {
        let hc = model.hamiltonian.matvec(&frame[c]);
        for r in 0..4 {
            h_eff[r][c] = frame[r].iter().zip(&hc).map(|(f, x)| f.conj() * x).sum();
        }
    }
    for r in 0..4 {
        for c in (r + 1)..4 {
            let avg = 0.5 * (h_eff[r][c] + h_eff[c][r].conj());
            h_eff[r][c] = avg;
            h_eff[c][r] = avg.conj();
        }
        h_eff[r][r] = Complex64::new(h_eff[r][r].re, 0.0);
    }

    // Operator basis: identity, sigma^z_1 + sigma^z_2, sigma^k_1 sigma^k_2.
    let field = [-2.0, 0.0, 0.0, 2.0]; // diagonal of sigma^z x 1 + 1 x sigma^z
    let axis = spin_axis(model.bond.index());
    let mut pair = [[Complex64::ZERO; 4]; 4];
    for r1 in 0..2 {
        for r2 in 0..2 {
            for c1 in 0..2 {
                for c2 in 0..2 {
                    pair[2 * r1 + r2][2 * c1 + c2] = axis.get(r1, c1) * axis.get(r2, c2);
                }
            }
        }
    }

    let offset = (0..4).map(|i| h_eff[i][i].re).sum::<f64>() / 4.0;
    let b_eff = (0..4).map(|i| h_eff[i][i].re * field[i]).sum::<f64>() / 8.0;
    let mut tr_pair = Complex64::ZERO;
    for r in 0..4 {
        for c in 0..4 {
            tr_pair += h_eff[r][c] * pair[c][r];
        }
    }
    let j_eff = tr_pair.re / 4.0;

    let mut residual_sq = 0.0;
    for r in 0..4 {
        for c in 0..4 {
            let mut fit = j_eff * pair[r][c];
            if r == c {
                fit += Complex64::new(offset + b_eff * field[r], 0.0);
            }
            residual_sq += (h_eff[r][c] - fit).norm_sqr();
        }
    }

    Ok(BondCoupling {
        j_eff,
        b_eff,
        offset,
        residual: residual_sq.sqrt(),
        zero_photon_weights,
        separation_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::CavityParams;
    use crate::qops::{eig_low, EigOptions};

    /// Balanced z-bond operating point with hierarchy parameter `r`:
    /// amplitudes and tunnelling sit a factor r below the photon shift.
    fn z_recipe(r: f64) -> SystemParams {
        let omega_b2 = 2.0 / r;
        SystemParams {
            omega_ea: 5000.0,
            omega_ba: 40.0,
            nu1: 5020.0,
            nu2: 4940.0,
            omega_a1: 0.0,
            omega_a2: 3.0f64.sqrt() * omega_b2,
            omega_b1: 0.0,
            omega_b2,
            cavity: [
                CavityParams { nu: 4940.0, g_a: 0.0, g_b: 0.0, t: 0.0 },
                CavityParams { nu: 4940.0, g_a: 0.0, g_b: 0.0, t: 0.0 },
                CavityParams { nu: 4940.0, g_a: -(3.0f64.sqrt()), g_b: 1.0, t: 0.05 / r },
            ],
        }
    }

    /// Unbalanced x-bond point (drives deliberately off the balanced ratio).
    fn x_generic() -> SystemParams {
        SystemParams {
            omega_ea: 5000.0,
            omega_ba: 40.0,
            nu1: 4980.0,
            nu2: 4900.0,
            omega_a1: 0.12,
            omega_a2: 0.0,
            omega_b1: 0.0,
            omega_b2: 0.2,
            cavity: [
                CavityParams { nu: 4940.0, g_a: 0.7 * 3.0f64.sqrt(), g_b: 0.7, t: 0.004 },
                CavityParams { nu: 4940.0, g_a: 0.0, g_b: 0.0, t: 0.0 },
                CavityParams { nu: 4940.0, g_a: 0.0, g_b: 0.0, t: 0.0 },
            ],
        }
    }

    fn sorted_spectrum(h: &OperatorMatrix) -> Vec<f64> {
        let res = eig_low(h, h.dim(), &EigOptions::default()).unwrap();
        res.eigenvalues
    }

    #[test]
    fn reduced_site_matches_the_elimination_coefficients() {
        let params = x_generic();
        let cutoff = FockCutoff::uniform(1);
        let h = build_reduced_site(&params, &cutoff, false).unwrap();
        assert!(h.is_hermitian(1e-12));

        let scales = derive_scales(&params).unwrap();
        let space = site_space(&cutoff).unwrap();
        let ground = space.basis_index(&[0, 0, 0, 0]).unwrap();
        let want = -(scales.eta_a1 + scales.eta_a2);
        assert!((h.get(ground, ground).re - want).abs() < 1e-14);

        // Raman flip element: |a;000> -> |b;100> carries -A_x1.
        let flipped = space.basis_index(&[1, 1, 0, 0]).unwrap();
        assert!((h.get(flipped, ground).re + scales.a_1[0]).abs() < 1e-14);

        // Photon energy: one x photon costs -lambda_x on top of the shift.
        let one_photon = space.basis_index(&[0, 1, 0, 0]).unwrap();
        let want_photon = want - scales.lambda[0];
        assert!((h.get(one_photon, one_photon).re - want_photon).abs() < 1e-14);
    }

    #[test]
    fn cross_mode_exchange_preserves_photon_number_and_hermiticity() {
        let params = x_generic();
        let mut params = params;
        // Give the y mode a coupling so a cross term exists.
        params.cavity[1].g_a = 0.5;
        params.cavity[1].g_b = 0.5 / 3.0f64.sqrt();
        let cutoff = FockCutoff::uniform(1);
        let h = build_reduced_site(&params, &cutoff, true).unwrap();
        assert!(h.is_hermitian(1e-12));

        let space = site_space(&cutoff).unwrap();
        // |a;100> <-> |a;010> exchange is present...
        let x_photon = space.basis_index(&[0, 1, 0, 0]).unwrap();
        let y_photon = space.basis_index(&[0, 0, 1, 0]).unwrap();
        assert!(h.get(x_photon, y_photon).norm() > 1e-6);
        // ...but the zero-photon sector is untouched by it.
        let without = build_reduced_site(&params, &cutoff, false).unwrap();
        let g = space.basis_index(&[0, 0, 0, 0]).unwrap();
        assert!((h.get(g, g) - without.get(g, g)).norm() < 1e-15);
    }

    #[test]
    fn one_site_amplitude_sign_flip_preserves_bond_spectra() {
        let cutoff = FockCutoff::uniform(2);

        // Raman-mediated bond, unbalanced drives: the flip is an exact gauge.
        let params = x_generic();
        let (_, plain, _) =
            bond_hamiltonian_with_site_signs(&params, &cutoff, Bond::X, [1.0, 1.0]).unwrap();
        let (_, flipped, _) =
            bond_hamiltonian_with_site_signs(&params, &cutoff, Bond::X, [-1.0, 1.0]).unwrap();
        let sa = sorted_spectrum(&plain);
        let sb = sorted_spectrum(&flipped);
        for (a, b) in sa.iter().zip(&sb) {
            assert!((a - b).abs() < 1e-11, "x spectra differ: {a} vs {b}");
        }

        // Conditional-displacement bond at the balanced point.
        let params = z_recipe(20.0);
        let (_, plain, _) =
            bond_hamiltonian_with_site_signs(&params, &cutoff, Bond::Z, [1.0, 1.0]).unwrap();
        let (_, flipped, _) =
            bond_hamiltonian_with_site_signs(&params, &cutoff, Bond::Z, [-1.0, 1.0]).unwrap();
        let sa = sorted_spectrum(&plain);
        let sb = sorted_spectrum(&flipped);
        for (a, b) in sa.iter().zip(&sb) {
            assert!((a - b).abs() < 1e-11, "z spectra differ: {a} vs {b}");
        }
    }

    #[test]
    fn z_bond_extraction_recovers_the_conditional_coupling() {
        let r = 20.0;
        let params = z_recipe(r);
        let cutoff = FockCutoff::uniform(2);
        let model = build_bond_model(&params, &cutoff, Bond::Z).unwrap();
        assert_eq!(model.space.dim(), 36);

        let spectrum = eig_low(&model.hamiltonian, 36, &EigOptions::default()).unwrap();
        let coupling = extract_bond_coupling(&model, &spectrum).unwrap();

        let expected = 0.1 / (r * r * r);
        let rel = (coupling.j_eff - expected).abs() / expected;
        assert!(rel < 0.15, "j_eff = {} vs expected {expected} (rel {rel})", coupling.j_eff);
        assert!(coupling.b_eff.abs() < 1e-6, "b_eff = {}", coupling.b_eff);
        assert!(coupling.residual < 1e-6, "residual = {}", coupling.residual);
        for w in coupling.zero_photon_weights {
            assert!(w >= 0.99, "weight {w}");
        }
        assert!(coupling.separation_ratio.unwrap() >= 10.0);
    }
}

//! Bond and field coefficients of the effective spin model.

use crate::kitaev::model::{assemble_spin_hamiltonian, DEFAULT_ED_LIMIT};
use crate::kitaev::HoneycombLattice;
use crate::params::{Bond, SystemParams};
use crate::qops::OperatorMatrix;

use super::conditions::{check_conditions, ConditionTolerances};
use super::scales::DerivedScales;
use super::EffectiveError;

/// Treatment of the cavity-laser detuning differences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Matched operating point: every cavity channel shares its laser's
    /// energy denominator (all delta_k = 0).
    Simple,
    /// Photon-number-sensitive treatment with finite delta_k, using the
    /// epsilon/kappa correction factors.
    General,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::Simple => "simple",
            Regime::General => "general",
        }
    }

    pub fn from_label(label: &str) -> Option<Regime> {
        match label {
            "simple" => Some(Regime::Simple),
            "general" => Some(Regime::General),
            _ => None,
        }
    }
}

/// Raw coefficients of the effective spin Hamiltonian
///
/// ```text
/// H = sum_sites [B_x + B_y + B_z + (-J_z1 + J_z2)/4] sigma_z
///   + sum_{x links} (1/2) [(J_x1 + J_x2) sigma_x sigma_x + (J_x1 - J_x2) sigma_y sigma_y]
///   + sum_{y links} (1/2) [(J_y1 + J_y2) sigma_x sigma_x + (J_y1 - J_y2) sigma_y sigma_y]
///   + sum_{z links} (1/4) (J_z1 + J_z2 - 2 J_z3) sigma_z sigma_z
/// ```
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EffectiveCouplings {
    pub regime: Regime,
    pub b_x: f64,
    pub b_y: f64,
    pub b_z: f64,
    pub j_x1: f64,
    pub j_x2: f64,
    pub j_y1: f64,
    pub j_y2: f64,
    pub j_z1: f64,
    pub j_z2: f64,
    pub j_z3: f64,
}

impl EffectiveCouplings {
    /// Coefficient of the uniform sigma_z field per site.
    pub fn field_coefficient(&self) -> f64 {
        self.b_x + self.b_y + self.b_z + 0.25 * (-self.j_z1 + self.j_z2)
    }

    /// Coefficient of sigma_x sigma_x on links of the given direction.
    pub fn xx_coefficient(&self, bond: Bond) -> f64 {
        match bond {
            Bond::X => 0.5 * (self.j_x1 + self.j_x2),
            Bond::Y => 0.5 * (self.j_y1 + self.j_y2),
            Bond::Z => 0.0,
        }
    }

    /// Coefficient of sigma_y sigma_y on links of the given direction.
    pub fn yy_coefficient(&self, bond: Bond) -> f64 {
        match bond {
            Bond::X => 0.5 * (self.j_x1 - self.j_x2),
            Bond::Y => 0.5 * (self.j_y1 - self.j_y2),
            Bond::Z => 0.0,
        }
    }

    /// Coefficient of sigma_z sigma_z on links of the given direction.
    pub fn zz_coefficient(&self, bond: Bond) -> f64 {
        match bond {
            Bond::Z => 0.25 * (self.j_z1 + self.j_z2 - 2.0 * self.j_z3),
            _ => 0.0,
        }
    }
}

/// Final anisotropic bond strengths (plus the optional uniform field).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KitaevCouplings {
    /// sigma_x sigma_x strength on x links.
    pub j_x: f64,
    /// sigma_y sigma_y strength on y links.
    pub j_y: f64,
    /// Nominal sigma_z sigma_z strength on z links at the balanced point.
    pub j_z: f64,
    /// Uniform sigma_z field per site (zero at the balanced point).
    pub b: f64,
    /// Operative sigma_z sigma_z strength; equals `j_z` whenever the
    /// operating conditions hold exactly (b = 0).
    pub j_zc: f64,
}

impl KitaevCouplings {
    /// Assemble from externally chosen bond strengths (no microscopic input).
    pub fn from_bonds(j_x: f64, j_y: f64, j_z: f64, b: f64) -> KitaevCouplings {
        KitaevCouplings { j_x, j_y, j_z, b, j_zc: j_z }
    }

    /// The coefficient actually placed on z links.
    pub fn z_coupling(&self) -> f64 {
        self.j_zc
    }
}

/// Guarded quotient: a vanishing numerator wins over a vanishing denominator
/// (an undriven channel contributes nothing, whatever its couplings).
fn quot(num: f64, den: f64, what: &str) -> Result<f64, EffectiveError> {
    if num == 0.0 {
        Ok(0.0)
    } else if den == 0.0 {
        Err(EffectiveError::Singularity(format!("{what} divides by zero")))
    } else {
        Ok(num / den)
    }
}

/// Stark-type term amp^2 / (4 den) with the same guard convention.
fn stark(amp: f64, den: f64, what: &str) -> Result<f64, EffectiveError> {
    if amp == 0.0 {
        Ok(0.0)
    } else if den == 0.0 {
        Err(EffectiveError::Singularity(format!("{what} divides by zero")))
    } else {
        Ok((amp * amp) / (4.0 * den))
    }
}

fn sq(x: f64) -> f64 {
    x * x
}

/// Correction factors used by the coupling formulas for a given regime.
///
/// The simple regime fixes epsilon = kappa = 1 and delta = 0; the general
/// regime takes the derived values. Both regimes then share one code path,
/// so at a matched operating point (all delta_k snapped to zero) the general
/// results are bit-for-bit identical to the simple ones.
fn correction_factors(scales: &DerivedScales, regime: Regime) -> ([f64; 3], [f64; 3], [f64; 3], [f64; 3]) {
    match regime {
        Regime::Simple => ([1.0; 3], [1.0; 3], [1.0; 3], [0.0; 3]),
        Regime::General => (scales.epsilon, scales.kappa_a, scales.kappa_b, scales.delta_diff),
    }
}

/// Compute all coefficients of the effective spin Hamiltonian.
pub fn effective_couplings(
    scales: &DerivedScales,
    params: &SystemParams,
    regime: Regime,
) -> Result<EffectiveCouplings, EffectiveError> {
    let (eps, ka, kb, dd) = correction_factors(scales, regime);
    let d_a1 = params.delta_a1();
    let d_a2 = params.delta_a2();
    let d_b2 = params.delta_b2();

    let mut b_s = [0.0; 2];
    let mut j_s1 = [0.0; 2];
    let mut j_s2 = [0.0; 2];
    for (slot, s) in Bond::S_BONDS.iter().enumerate() {
        let i = s.index();
        let label = s.label();
        let c = params.mode(*s);
        // Energy denominators of the two Raman channels on this mode:
        // delta_a^s = Delta_b2 + delta_s and delta_b^s = Delta_a1 + delta_s.
        let den_a = d_b2 + dd[i];
        let den_b = d_a1 + dd[i];
        b_s[slot] = eps[i]
            * 0.5
            * (stark(ka[i] * params.omega_b2, den_a, &format!("field term B_{label}"))?
                - stark(kb[i] * params.omega_a1, den_b, &format!("field term B_{label}"))?);
        // A link without tunnelling carries no exchange coupling, whatever
        // the per-photon quotients would be.
        j_s1[slot] = if c.t == 0.0 {
            0.0
        } else {
            0.25 * c.t
                * (sq(quot(
                    eps[i] * kb[i] * params.omega_a1,
                    c.g_b,
                    &format!("coupling J_{label}1"),
                )?) + sq(quot(
                    eps[i] * ka[i] * params.omega_b2,
                    c.g_a,
                    &format!("coupling J_{label}1"),
                )?))
        };
        j_s2[slot] = if c.t == 0.0 {
            0.0
        } else {
            0.5 * c.t
                * eps[i]
                * eps[i]
                * ka[i]
                * kb[i]
                * quot(
                    params.omega_a1 * params.omega_b2,
                    c.g_a * c.g_b,
                    &format!("coupling J_{label}2"),
                )?
        };
    }

    let iz = Bond::Z.index();
    let cz = params.mode(Bond::Z);
    // Energy denominators of the two conditioned-emission channels:
    // delta_b^z = Delta_b2 + delta_z and delta_a^z = Delta_a2 + delta_z.
    let den_b = d_b2 + dd[iz];
    let den_a = d_a2 + dd[iz];
    let b_z = eps[iz]
        * 0.5
        * (stark(kb[iz] * params.omega_b2, den_b, "field term B_z")?
            - stark(ka[iz] * params.omega_a2, den_a, "field term B_z")?);
    let (j_z1, j_z2, j_z3) = if cz.t == 0.0 {
        (0.0, 0.0, 0.0)
    } else {
        (
            0.5 * cz.t
                * sq(quot(eps[iz] * ka[iz] * params.omega_a2, cz.g_a, "coupling J_z1")?),
            0.5 * cz.t
                * sq(quot(eps[iz] * kb[iz] * params.omega_b2, cz.g_b, "coupling J_z2")?),
            0.5 * cz.t
                * eps[iz]
                * eps[iz]
                * ka[iz]
                * kb[iz]
                * quot(params.omega_a2 * params.omega_b2, cz.g_a * cz.g_b, "coupling J_z3")?,
        )
    };

    Ok(EffectiveCouplings {
        regime,
        b_x: b_s[0],
        b_y: b_s[1],
        b_z,
        j_x1: j_s1[0],
        j_x2: j_s2[0],
        j_y1: j_s1[1],
        j_y2: j_s2[1],
        j_z1,
        j_z2,
        j_z3,
    })
}

/// Reduce the effective couplings to the ideal anisotropic bond strengths.
///
/// With `with_field = false` all three bond families must satisfy the
/// operating conditions; the result has `b = 0` and `j_zc = j_z` exactly.
/// With `with_field = true` only the x/y families are required to balance:
/// the z-channel drive may be deliberately detuned, producing a uniform
/// sigma_z field `b = B_z - (J_z1 - J_z2)/4` and a z coupling
/// `j_zc = (J_z1 + J_z2 - 2 J_z3)/4`.
pub fn kitaev_couplings(
    couplings: &EffectiveCouplings,
    scales: &DerivedScales,
    params: &SystemParams,
    with_field: bool,
    tol: &ConditionTolerances,
) -> Result<KitaevCouplings, EffectiveError> {
    let bonds: &[Bond] = if with_field { &[Bond::X, Bond::Y] } else { &Bond::ALL };
    let report = check_conditions(params, scales, couplings.regime, bonds, tol);
    if !report.verdict() {
        let failed: Vec<&str> = report
            .entries
            .iter()
            .filter(|e| !e.satisfied)
            .map(|e| e.name.as_str())
            .collect();
        return Err(EffectiveError::ConditionsNotMet(format!(
            "failed checks: {}",
            failed.join(", ")
        )));
    }

    let (eps, ka, kb, _) = correction_factors(scales, couplings.regime);
    let cx = params.mode(Bond::X);
    let cy = params.mode(Bond::Y);
    let cz = params.mode(Bond::Z);
    // As in the raw coefficients, a link without tunnelling contributes no
    // exchange coupling regardless of the per-photon quotients.
    let j_x = if cx.t == 0.0 {
        0.0
    } else {
        0.5 * cx.t * sq(quot(eps[0] * ka[0] * params.omega_b2, cx.g_a, "coupling J_x")?)
    };
    let j_y = if cy.t == 0.0 {
        0.0
    } else {
        0.5 * cy.t * sq(quot(eps[1] * ka[1] * params.omega_b2, cy.g_a, "coupling J_y")?)
    };
    let j_z = if cz.t == 0.0 {
        0.0
    } else {
        0.5 * cz.t * sq(quot(eps[2] * kb[2] * params.omega_b2, cz.g_b, "coupling J_z")?)
    };

    if with_field {
        let b = couplings.b_z - 0.25 * (couplings.j_z1 - couplings.j_z2);
        let j_zc = 0.25 * (couplings.j_z1 + couplings.j_z2 - 2.0 * couplings.j_z3);
        Ok(KitaevCouplings { j_x, j_y, j_z, b, j_zc })
    } else {
        Ok(KitaevCouplings { j_x, j_y, j_z, b: 0.0, j_zc: j_z })
    }
}

/// Build the full effective spin Hamiltonian on a finite lattice.
///
/// Places the xx/yy mixture on x and y links, the zz term on z links, and the
/// uniform field on every site, using the raw coefficients (no operating-
/// condition gate: imbalanced points are faithfully represented).
pub fn build_effective_spin_hamiltonian(
    couplings: &EffectiveCouplings,
    lattice: &HoneycombLattice,
) -> Result<OperatorMatrix, EffectiveError> {
    let xx = [
        couplings.xx_coefficient(Bond::X),
        couplings.xx_coefficient(Bond::Y),
        couplings.xx_coefficient(Bond::Z),
    ];
    let yy = [
        couplings.yy_coefficient(Bond::X),
        couplings.yy_coefficient(Bond::Y),
        couplings.yy_coefficient(Bond::Z),
    ];
    let zz = [
        couplings.zz_coefficient(Bond::X),
        couplings.zz_coefficient(Bond::Y),
        couplings.zz_coefficient(Bond::Z),
    ];
    assemble_spin_hamiltonian(lattice, &xx, &yy, &zz, couplings.field_coefficient(), DEFAULT_ED_LIMIT)
        .map_err(|e| match e {
            crate::kitaev::KitaevError::Capacity(msg) => EffectiveError::Capacity(msg),
            other => EffectiveError::Input(other.to_string()),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effective::scales::derive_scales;
    use crate::effective::solve::{
        solve_conditions, CavityFrequencySpec, ConditionSolveSpec, CouplingSpec, FrequencySpec,
        RabiSpec,
    };

    fn balanced_spec(regime: Regime) -> ConditionSolveSpec {
        ConditionSolveSpec {
            omega_ea: 4000.0,
            omega_ba: 50.0,
            frequencies: FrequencySpec::Solve { delta_a2: 120.0 },
            cavity_frequencies: [
                CavityFrequencySpec::Solve { delta_diff: 0.0 },
                CavityFrequencySpec::Solve { delta_diff: 0.0 },
                CavityFrequencySpec::Solve { delta_diff: 0.0 },
            ],
            couplings: [
                CouplingSpec { g_b: 0.6, g_a: None },
                CouplingSpec { g_b: 0.7, g_a: None },
                CouplingSpec { g_b: 1.0, g_a: None },
            ],
            t: [0.003, 0.004, 0.005],
            omega_b1: 0.0,
            omega_b2: 0.2,
            rabi: RabiSpec::Table { regime, omega_a1_scale: 1.0, omega_a2_scale: 1.0 },
        }
    }

    #[test]
    fn balanced_point_reduces_to_anisotropic_model() {
        let params = solve_conditions(&balanced_spec(Regime::Simple)).unwrap();
        let scales = derive_scales(&params).unwrap();
        let eff = effective_couplings(&scales, &params, Regime::Simple).unwrap();

        // Two-spin identities of the balanced point.
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs());
        assert!(rel(eff.j_x1, eff.j_x2) < 1e-12);
        assert!(rel(eff.j_y1, -eff.j_y2) < 1e-12);
        assert!(rel(eff.j_z1, eff.j_z2) < 1e-12);
        assert!(rel(eff.j_z1, -eff.j_z3) < 1e-12);
        // Residual transverse admixtures and the field cancel.
        let scale = eff.j_x1.abs().max(scales.eta_b2.abs());
        assert!(eff.yy_coefficient(Bond::X).abs() < 1e-12 * scale);
        assert!(eff.xx_coefficient(Bond::Y).abs() < 1e-12 * scale);
        assert!(eff.field_coefficient().abs() < 1e-12 * scale);

        let tol = ConditionTolerances::default();
        let kc = kitaev_couplings(&eff, &scales, &params, false, &tol).unwrap();
        assert_eq!(kc.b, 0.0);
        assert_eq!(kc.j_zc, kc.j_z);
        assert!(rel(kc.j_x, eff.xx_coefficient(Bond::X)) < 1e-12);
        assert!(rel(kc.j_y, eff.yy_coefficient(Bond::Y)) < 1e-12);
        assert!(rel(kc.j_z, eff.zz_coefficient(Bond::Z)) < 1e-12);
    }

    #[test]
    fn general_regime_degenerates_bitwise_at_matched_point() {
        let params = solve_conditions(&balanced_spec(Regime::Simple)).unwrap();
        let scales = derive_scales(&params).unwrap();
        let simple = effective_couplings(&scales, &params, Regime::Simple).unwrap();
        let general = effective_couplings(&scales, &params, Regime::General).unwrap();
        assert_eq!(simple.b_x.to_bits(), general.b_x.to_bits());
        assert_eq!(simple.b_y.to_bits(), general.b_y.to_bits());
        assert_eq!(simple.b_z.to_bits(), general.b_z.to_bits());
        assert_eq!(simple.j_x1.to_bits(), general.j_x1.to_bits());
        assert_eq!(simple.j_x2.to_bits(), general.j_x2.to_bits());
        assert_eq!(simple.j_y1.to_bits(), general.j_y1.to_bits());
        assert_eq!(simple.j_y2.to_bits(), general.j_y2.to_bits());
        assert_eq!(simple.j_z1.to_bits(), general.j_z1.to_bits());
        assert_eq!(simple.j_z2.to_bits(), general.j_z2.to_bits());
        assert_eq!(simple.j_z3.to_bits(), general.j_z3.to_bits());
    }

    #[test]
    fn deliberate_z_detuning_yields_field() {
        let mut spec = balanced_spec(Regime::Simple);
        spec.rabi = RabiSpec::Table {
            regime: Regime::Simple,
            omega_a1_scale: 1.0,
            omega_a2_scale: 1.2,
        };
        let params = solve_conditions(&spec).unwrap();
        let scales = derive_scales(&params).unwrap();
        let eff = effective_couplings(&scales, &params, Regime::Simple).unwrap();
        let tol = ConditionTolerances::default();
        // The z-channel balance is broken, so the no-field reduction refuses.
        assert!(matches!(
            kitaev_couplings(&eff, &scales, &params, false, &tol),
            Err(EffectiveError::ConditionsNotMet(_))
        ));
        let kc = kitaev_couplings(&eff, &scales, &params, true, &tol).unwrap();
        assert!(kc.b != 0.0);
        assert!((kc.b - (eff.b_z - 0.25 * (eff.j_z1 - eff.j_z2))).abs() < 1e-18);
        assert!((kc.j_zc - eff.zz_coefficient(Bond::Z)).abs() < 1e-18);
    }

    #[test]
    fn undriven_channel_wins_over_zero_coupling() {
        let mut spec = balanced_spec(Regime::Simple);
        // Switch laser 2 off on the a-e transition and decouple the z mode
        // from it: the channel is undriven, so the vanishing coupling must
        // not be treated as a singularity.
        spec.rabi = RabiSpec::Raw { omega_a1: 0.1, omega_a2: 0.0 };
        spec.couplings[2] = CouplingSpec { g_b: 1.0, g_a: Some(0.0) };
        let params = solve_conditions(&spec).unwrap();
        let scales = derive_scales(&params).unwrap();
        let eff = effective_couplings(&scales, &params, Regime::Simple).unwrap();
        assert_eq!(eff.j_z1, 0.0);
        assert_eq!(eff.j_z3, 0.0);
        assert!(eff.j_z2 != 0.0);
    }

    #[test]
    fn live_drive_with_zero_coupling_is_singular() {
        let mut spec = balanced_spec(Regime::Simple);
        spec.couplings[2] = CouplingSpec { g_b: 0.0, g_a: Some(1.0) };
        let params = solve_conditions(&spec).unwrap();
        let scales = derive_scales(&params).unwrap();
        assert!(matches!(
            effective_couplings(&scales, &params, Regime::Simple),
            Err(EffectiveError::Singularity(_))
        ));
    }
}

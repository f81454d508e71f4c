//! Forward solver for the operating conditions.
//!
//! Users rarely want to hand-enter six cavity/laser frequencies and four
//! drive amplitudes that satisfy the resonance and balance conditions to
//! fifteen digits. The solver takes the independent quantities (transition
//! frequencies, one laser detuning, per-mode detuning offsets, one coupling
//! and one drive anchor per channel) and constructs a [`SystemParams`] whose
//! derived detunings satisfy the conditions exactly:
//!
//! - two-photon resonance: nu1 = nu2 + 2 omega_ba,
//! - matched modes: nu_s = nu2 + omega_ba - delta_s (s = x, y) and
//!   nu_z = nu2 - delta_z,
//! - coupling balance: (g_a^k)^2 = gamma_k (g_b^k)^2 with the sign pattern
//!   (+, -, -) for (x, y, z),
//! - drive balance (optional): Omega_a1 and Omega_a2 derived from Omega_b2
//!   through the regime's balance rows, with optional scale factors for
//!   deliberately imbalanced studies.

use crate::params::{Bond, CavityParams, SystemParams};

use super::couplings::Regime;
use super::scales::{derive_scales, EQUALITY_TOL};
use super::EffectiveError;

/// Laser-frequency input style.
#[derive(Clone, Copy, Debug)]
pub enum FrequencySpec {
    /// Give the second laser's detuning from the a-e transition; the solver
    /// places both lasers on the two-photon resonance.
    Solve { delta_a2: f64 },
    /// Give both laser frequencies directly.
    Raw { nu1: f64, nu2: f64 },
}

/// Cavity-frequency input style for one mode.
#[derive(Clone, Copy, Debug)]
pub enum CavityFrequencySpec {
    /// Give the detuning difference delta_k off the matched point (zero for
    /// the matched operating point).
    Solve { delta_diff: f64 },
    /// Give the mode frequency directly.
    Raw { nu: f64 },
}

/// Coupling input for one mode: `g_a` is derived from the balance row and
/// sign pattern when absent.
#[derive(Clone, Copy, Debug)]
pub struct CouplingSpec {
    pub g_b: f64,
    pub g_a: Option<f64>,
}

/// Drive-amplitude input style.
#[derive(Clone, Copy, Debug)]
pub enum RabiSpec {
    /// Derive Omega_a1 and Omega_a2 from Omega_b2 through the balance rows
    /// of the given regime. The scale factors multiply the balanced values
    /// (1.0 = balanced); scaling Omega_a2 away from 1 realizes the
    /// controlled uniform field.
    Table { regime: Regime, omega_a1_scale: f64, omega_a2_scale: f64 },
    /// Give both amplitudes directly.
    Raw { omega_a1: f64, omega_a2: f64 },
}

/// Complete solver input.
#[derive(Clone, Debug)]
pub struct ConditionSolveSpec {
    pub omega_ea: f64,
    pub omega_ba: f64,
    pub frequencies: FrequencySpec,
    /// Indexed by [`Bond::index`].
    pub cavity_frequencies: [CavityFrequencySpec; 3],
    /// Indexed by [`Bond::index`].
    pub couplings: [CouplingSpec; 3],
    /// Photon tunneling rates, indexed by [`Bond::index`].
    pub t: [f64; 3],
    pub omega_b1: f64,
    pub omega_b2: f64,
    pub rabi: RabiSpec,
}

/// Sign of g_a relative to sqrt(gamma_k) g_b for each bond direction.
fn coupling_sign(bond: Bond) -> f64 {
    match bond {
        Bond::X => 1.0,
        Bond::Y | Bond::Z => -1.0,
    }
}

/// Construct a parameter set satisfying the operating conditions.
pub fn solve_conditions(spec: &ConditionSolveSpec) -> Result<SystemParams, EffectiveError> {
    if spec.omega_ba <= 0.0 {
        return Err(EffectiveError::Input("omega_ba must be positive".into()));
    }

    let (nu1, nu2) = match spec.frequencies {
        FrequencySpec::Solve { delta_a2 } => {
            let nu2 = spec.omega_ea - delta_a2;
            (nu2 + 2.0 * spec.omega_ba, nu2)
        }
        FrequencySpec::Raw { nu1, nu2 } => (nu1, nu2),
    };

    let mut cavity = [CavityParams { nu: 0.0, g_a: 0.0, g_b: 0.0, t: 0.0 }; 3];
    for k in Bond::ALL {
        let i = k.index();
        let nu = match spec.cavity_frequencies[i] {
            CavityFrequencySpec::Solve { delta_diff } => match k {
                Bond::X | Bond::Y => nu2 + spec.omega_ba - delta_diff,
                Bond::Z => nu2 - delta_diff,
            },
            CavityFrequencySpec::Raw { nu } => nu,
        };
        cavity[i] = CavityParams { nu, g_a: 0.0, g_b: spec.couplings[i].g_b, t: spec.t[i] };
    }

    // Provisional parameter set (zero drives) used to read back the derived
    // detunings, ratios, and correction factors from the frequencies exactly
    // as every later consumer will.
    let mut params = SystemParams {
        omega_ea: spec.omega_ea,
        omega_ba: spec.omega_ba,
        nu1,
        nu2,
        omega_a1: 0.0,
        omega_a2: 0.0,
        omega_b1: spec.omega_b1,
        omega_b2: spec.omega_b2,
        cavity,
    };
    let scales = derive_scales(&params)?;

    for k in Bond::ALL {
        let i = k.index();
        match spec.couplings[i].g_a {
            Some(g_a) => params.cavity[i].g_a = g_a,
            None => {
                let gamma = scales.gamma[i];
                if spec.couplings[i].g_b == 0.0 {
                    params.cavity[i].g_a = 0.0;
                } else if gamma <= 0.0 {
                    return Err(EffectiveError::Input(format!(
                        "cannot balance couplings on mode {}: detuning ratio gamma = {gamma} \
                         is not positive",
                        k.label()
                    )));
                } else {
                    params.cavity[i].g_a =
                        coupling_sign(k) * gamma.sqrt() * spec.couplings[i].g_b;
                }
            }
        }
    }

    match spec.rabi {
        RabiSpec::Raw { omega_a1, omega_a2 } => {
            params.omega_a1 = omega_a1;
            params.omega_a2 = omega_a2;
        }
        RabiSpec::Table { regime, omega_a1_scale, omega_a2_scale } => {
            let (ka, kb) = match regime {
                Regime::Simple => ([1.0; 3], [1.0; 3]),
                Regime::General => (scales.kappa_a, scales.kappa_b),
            };
            // Both Raman rows fix the same pair (Omega_a1, Omega_b2); they
            // are compatible only when x and y share a detuning offset.
            let dx = scales.delta_diff[0];
            let dy = scales.delta_diff[1];
            let offset_scale = dx.abs().max(dy.abs()).max(params.delta_a1().abs());
            if (dx - dy).abs() > EQUALITY_TOL * offset_scale.max(1e-300) {
                return Err(EffectiveError::Input(format!(
                    "balancing the drives requires equal x/y detuning offsets, \
                     got delta_x = {dx} and delta_y = {dy}"
                )));
            }
            let gamma_s = scales.gamma[0];
            let gamma_z = scales.gamma[2];
            if gamma_s <= 0.0 || gamma_z <= 0.0 {
                return Err(EffectiveError::Input(format!(
                    "cannot balance drives: detuning ratios must be positive \
                     (gamma_x = {gamma_s}, gamma_z = {gamma_z})"
                )));
            }
            if kb[0] == 0.0 || ka[2] == 0.0 {
                return Err(EffectiveError::Singularity(
                    "drive balance divides by a vanishing correction factor".into(),
                ));
            }
            params.omega_a1 =
                omega_a1_scale * ka[0] * params.omega_b2 / (kb[0] * gamma_s.sqrt());
            params.omega_a2 =
                omega_a2_scale * gamma_z.sqrt() * kb[2] * params.omega_b2 / ka[2];
        }
    }

    params
        .validate()
        .map_err(|e| EffectiveError::Input(e.to_string()))?;
    Ok(params)
}

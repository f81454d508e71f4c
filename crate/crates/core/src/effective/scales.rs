//! Intermediate coefficients of the two adiabatic eliminations.

use crate::params::{Bond, SystemParams};

use super::EffectiveError;

/// Relative tolerance used for frequency-consistency checks and for snapping
/// cavity-laser detuning differences to zero.
pub const EQUALITY_TOL: f64 = 1e-9;

/// Every derived coefficient of the first (excited-state) elimination and the
/// correction factors of the general (photon-number-sensitive) treatment.
///
/// Arrays are indexed by [`Bond::index`].
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedScales {
    /// Stark shift of |a> from laser 1: Omega_a1^2 / (4 Delta_a1).
    pub eta_a1: f64,
    /// Stark shift of |a> from laser 2.
    pub eta_a2: f64,
    /// Stark shift of |b> from laser 1.
    pub eta_b1: f64,
    /// Stark shift of |b> from laser 2.
    pub eta_b2: f64,
    /// Photon-conditioned shift of |a| per mode: (g_a^k)^2 / delta_a^k.
    pub lambda_a: [f64; 3],
    /// Photon-conditioned shift of |b> per mode.
    pub lambda_b: [f64; 3],
    /// Common photon energy scale per mode (mean of the two shifts; the
    /// operating point requires them to coincide).
    pub lambda: [f64; 3],
    /// First photon-assisted amplitude per mode. For the Raman-mediated x/y
    /// modes this is A_k1 = g_b^k Omega_a1 / (2 delta_b^k) (spin-raising);
    /// for the z mode it is A_z1 = g_a^z Omega_a2 / (2 delta_a^z) (|a>-
    /// conditioned emission).
    pub a_1: [f64; 3],
    /// Second photon-assisted amplitude per mode. x/y: A_k2 =
    /// g_a^k Omega_b2 / (2 delta_a^k) (spin-lowering); z: A_z2 =
    /// g_b^z Omega_b2 / (2 delta_b^z) (|b>-conditioned emission).
    pub a_2: [f64; 3],
    /// Detuning ratio gamma_k = delta_a^k / delta_b^k.
    pub gamma: [f64; 3],
    /// Cavity-laser detuning difference delta_k (zero at the matched
    /// operating point; values below [`EQUALITY_TOL`] relative to the parent
    /// detunings are snapped to exactly zero).
    pub delta_diff: [f64; 3],
    /// Photon-number correction epsilon^k = 1 / (1 + delta_k / lambda_k).
    pub epsilon: [f64; 3],
    /// Amplitude correction kappa_a^k = 1 + delta_k / (2 delta_a^k).
    pub kappa_a: [f64; 3],
    /// Amplitude correction kappa_b^k = 1 + delta_k / (2 delta_b^k).
    pub kappa_b: [f64; 3],
}

fn require_nonzero(value: f64, name: &str) -> Result<f64, EffectiveError> {
    if value == 0.0 {
        Err(EffectiveError::Singularity(format!("{name} is zero")))
    } else if !value.is_finite() {
        Err(EffectiveError::Input(format!("{name} is not finite")))
    } else {
        Ok(value)
    }
}

/// Derive all elimination coefficients from a parameter set.
///
/// Fails if any detuning entering a denominator vanishes, or if the
/// frequencies are mutually inconsistent: the two-photon resonance requires
/// nu1 - nu2 = 2 omega_ba, which also makes the two equivalent expressions
/// for each detuning difference delta_k agree.
pub fn derive_scales(params: &SystemParams) -> Result<DerivedScales, EffectiveError> {
    params
        .validate()
        .map_err(|e| EffectiveError::Input(e.to_string()))?;

    let d_a1 = require_nonzero(params.delta_a1(), "laser detuning Delta_a1")?;
    let d_a2 = require_nonzero(params.delta_a2(), "laser detuning Delta_a2")?;
    let d_b1 = require_nonzero(params.delta_b1(), "laser detuning Delta_b1")?;
    let d_b2 = require_nonzero(params.delta_b2(), "laser detuning Delta_b2")?;

    // Two-photon resonance between the lasers: nu1 - nu2 = 2 omega_ba. This
    // is what makes the spin-raising (laser 1 in, mode out) and spin-lowering
    // (laser 2 in, mode out) channels address the same cavity mode.
    let raman_lhs = params.nu1 - params.nu2;
    let raman_rhs = 2.0 * params.omega_ba;
    let raman_scale = raman_lhs.abs().max(raman_rhs.abs()).max(1e-300);
    if (raman_lhs - raman_rhs).abs() > EQUALITY_TOL * raman_scale {
        return Err(EffectiveError::InconsistentFrequencies(format!(
            "nu1 - nu2 = {raman_lhs} but 2 omega_ba = {raman_rhs}; \
             the two lasers must satisfy the two-photon resonance"
        )));
    }

    let eta = |omega: f64, delta: f64| (omega * omega) / (4.0 * delta);
    let eta_a1 = eta(params.omega_a1, d_a1);
    let eta_a2 = eta(params.omega_a2, d_a2);
    let eta_b1 = eta(params.omega_b1, d_b1);
    let eta_b2 = eta(params.omega_b2, d_b2);

    let mut lambda_a = [0.0; 3];
    let mut lambda_b = [0.0; 3];
    let mut lambda = [0.0; 3];
    let mut a_1 = [0.0; 3];
    let mut a_2 = [0.0; 3];
    let mut gamma = [0.0; 3];
    let mut delta_diff = [0.0; 3];
    let mut epsilon = [1.0; 3];
    let mut kappa_a = [1.0; 3];
    let mut kappa_b = [1.0; 3];

    for k in Bond::ALL {
        let i = k.index();
        let label = k.label();
        let da = require_nonzero(params.delta_a(k), &format!("cavity detuning delta_a^{label}"))?;
        let db = require_nonzero(params.delta_b(k), &format!("cavity detuning delta_b^{label}"))?;
        let c = params.mode(k);

        lambda_a[i] = (c.g_a * c.g_a) / da;
        lambda_b[i] = (c.g_b * c.g_b) / db;
        lambda[i] = 0.5 * (lambda_a[i] + lambda_b[i]);
        gamma[i] = da / db;

        match k {
            Bond::X | Bond::Y => {
                a_1[i] = c.g_b * params.omega_a1 / (2.0 * db);
                a_2[i] = c.g_a * params.omega_b2 / (2.0 * da);
            }
            Bond::Z => {
                a_1[i] = c.g_a * params.omega_a2 / (2.0 * da);
                a_2[i] = c.g_b * params.omega_b2 / (2.0 * db);
            }
        }

        // Detuning difference between the bond channel's two energy
        // denominators. Both expressions agree exactly when the two-photon
        // resonance holds; the cross-check guards hand-entered frequencies.
        let (via_a, via_b) = match k {
            Bond::X | Bond::Y => (da - d_b2, db - d_a1),
            Bond::Z => (da - d_a2, db - d_b2),
        };
        let scale = da.abs().max(db.abs()).max(d_a1.abs()).max(d_b2.abs());
        if (via_a - via_b).abs() > EQUALITY_TOL * scale {
            return Err(EffectiveError::InconsistentFrequencies(format!(
                "detuning difference for mode {label} is ambiguous: \
                 {via_a} from the a-channel vs {via_b} from the b-channel"
            )));
        }
        // Snap sub-rounding offsets to exactly zero so the matched operating
        // point degenerates bitwise to the simple treatment.
        delta_diff[i] = if via_a.abs() <= EQUALITY_TOL * scale { 0.0 } else { via_a };

        if delta_diff[i] != 0.0 {
            if lambda[i] == 0.0 {
                // Decoupled mode with a finite offset: the photon-number
                // correction suppresses the channel entirely.
                epsilon[i] = 0.0;
            } else {
                let denom = 1.0 + delta_diff[i] / lambda[i];
                if denom == 0.0 {
                    return Err(EffectiveError::Singularity(format!(
                        "epsilon^{label} diverges: delta_{label} = -lambda_{label}"
                    )));
                }
                epsilon[i] = 1.0 / denom;
            }
            kappa_a[i] = 1.0 + delta_diff[i] / (2.0 * da);
            kappa_b[i] = 1.0 + delta_diff[i] / (2.0 * db);
        }
    }

    Ok(DerivedScales {
        eta_a1,
        eta_a2,
        eta_b1,
        eta_b2,
        lambda_a,
        lambda_b,
        lambda,
        a_1,
        a_2,
        gamma,
        delta_diff,
        epsilon,
        kappa_a,
        kappa_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::CavityParams;

    fn matched_params() -> SystemParams {
        // omega_ea = 5000, omega_ba = 40, Delta_a2 = 100 ->
        // nu2 = 4900, nu1 = 4980, Delta_a1 = 20, Delta_b2 = 60.
        // Matched modes: nu_s = nu2 + omega_ba = 4940, nu_z = nu2 = 4900.
        SystemParams {
            omega_ea: 5000.0,
            omega_ba: 40.0,
            nu1: 4980.0,
            nu2: 4900.0,
            omega_a1: 0.2,
            omega_a2: 0.3,
            omega_b1: 0.0,
            omega_b2: 0.25,
            cavity: [
                CavityParams { nu: 4940.0, g_a: 1.2, g_b: 0.7, t: 0.002 },
                CavityParams { nu: 4940.0, g_a: 1.2, g_b: -0.7, t: 0.002 },
                CavityParams { nu: 4900.0, g_a: 1.0, g_b: -0.8, t: 0.002 },
            ],
        }
    }

    #[test]
    fn matched_point_has_zero_offsets_and_unit_corrections() {
        let scales = derive_scales(&matched_params()).unwrap();
        assert_eq!(scales.delta_diff, [0.0; 3]);
        assert_eq!(scales.epsilon, [1.0; 3]);
        assert_eq!(scales.kappa_a, [1.0; 3]);
        assert_eq!(scales.kappa_b, [1.0; 3]);
        // delta_a^s = Delta_b2 and delta_b^s = Delta_a1 at the matched point.
        assert_eq!(scales.gamma[0], 60.0 / 20.0);
        // Stark shifts.
        assert!((scales.eta_a1 - 0.2 * 0.2 / (4.0 * 20.0)).abs() < 1e-15);
        assert!((scales.eta_b2 - 0.25 * 0.25 / (4.0 * 60.0)).abs() < 1e-15);
        // Raman amplitudes on the x mode (delta_b^x = 20, delta_a^x = 60).
        assert!((scales.a_1[0] - 0.7 * 0.2 / (2.0 * 20.0)).abs() < 1e-15);
        assert!((scales.a_2[0] - 1.2 * 0.25 / (2.0 * 60.0)).abs() < 1e-15);
        // Conditioned-emission amplitudes on the z mode (delta_a^z = 100,
        // delta_b^z = 60).
        assert!((scales.a_1[2] - 1.0 * 0.3 / (2.0 * 100.0)).abs() < 1e-15);
        assert!((scales.a_2[2] - (-0.8) * 0.25 / (2.0 * 60.0)).abs() < 1e-15);
    }

    #[test]
    fn detuned_mode_gets_corrections() {
        let mut p = matched_params();
        // Shift the z mode by delta_z = -2 (red of the matched point).
        p.cavity[2].nu = 4902.0;
        let scales = derive_scales(&p).unwrap();
        assert_eq!(scales.delta_diff[2], -2.0);
        let lambda = scales.lambda[2];
        assert!((scales.epsilon[2] - 1.0 / (1.0 - 2.0 / lambda)).abs() < 1e-12);
        // Shifted cavity detunings: delta_a^z = 98, delta_b^z = 58.
        assert!((scales.kappa_a[2] - (1.0 - 2.0 / (2.0 * 98.0))).abs() < 1e-12);
        assert!((scales.kappa_b[2] - (1.0 - 2.0 / (2.0 * 58.0))).abs() < 1e-12);
        // x and y remain matched.
        assert_eq!(scales.delta_diff[0], 0.0);
        assert_eq!(scales.epsilon[0], 1.0);
    }

    #[test]
    fn broken_two_photon_resonance_is_rejected() {
        let mut p = matched_params();
        p.nu1 = 4981.0;
        match derive_scales(&p) {
            Err(EffectiveError::InconsistentFrequencies(_)) => {}
            other => panic!("expected inconsistent-frequency error, got {other:?}"),
        }
    }

    #[test]
    fn zero_detuning_is_singular() {
        let mut p = matched_params();
        p.cavity[0].nu = p.omega_ea;
        match derive_scales(&p) {
            Err(EffectiveError::Singularity(_)) => {}
            other => panic!("expected singularity error, got {other:?}"),
        }
    }
}

//! Physical system parameters.
//!
//! All quantities are angular frequencies in GHz (hbar = 1). Laser and cavity
//! frequencies are the single source of truth: every detuning is recomputed
//! from them on demand, so a parameter set can never carry inconsistent
//! detunings.
//!
//! Level scheme per atom: two long-lived states |a>, |b> and one excited state
//! |e>, with splittings `omega_ea` (e above a) and `omega_ba` (b above a).
//! The pseudo-spin is |a> = spin-down, |b> = spin-up.

use thiserror::Error;

/// Bond direction of the honeycomb lattice; also labels the cavity mode that
/// mediates couplings along that direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bond {
    X,
    Y,
    Z,
}

impl Bond {
    pub const ALL: [Bond; 3] = [Bond::X, Bond::Y, Bond::Z];

    pub fn index(self) -> usize {
        match self {
            Bond::X => 0,
            Bond::Y => 1,
            Bond::Z => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Bond::X => "x",
            Bond::Y => "y",
            Bond::Z => "z",
        }
    }

    pub fn from_label(label: &str) -> Option<Bond> {
        match label {
            "x" => Some(Bond::X),
            "y" => Some(Bond::Y),
            "z" => Some(Bond::Z),
            _ => None,
        }
    }

    /// The two Raman-mediated directions.
    pub const S_BONDS: [Bond; 2] = [Bond::X, Bond::Y];
}

impl std::fmt::Display for Bond {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Per-direction cavity parameters.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CavityParams {
    /// Cavity mode frequency.
    pub nu: f64,
    /// Coupling of the mode to the |a> <-> |e> transition (signed).
    pub g_a: f64,
    /// Coupling of the mode to the |b> <-> |e> transition (signed).
    pub g_b: f64,
    /// Photon tunneling rate to the neighboring cavity along this direction.
    pub t: f64,
}

/// Complete microscopic input set.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemParams {
    /// |a> -> |e> splitting.
    pub omega_ea: f64,
    /// |a> -> |b> splitting (> 0).
    pub omega_ba: f64,
    /// First laser frequency.
    pub nu1: f64,
    /// Second laser frequency.
    pub nu2: f64,
    /// Rabi frequency of laser 1 on |a> <-> |e| (signed).
    pub omega_a1: f64,
    /// Rabi frequency of laser 2 on |a> <-> |e> (signed).
    pub omega_a2: f64,
    /// Rabi frequency of laser 1 on |b> <-> |e> (signed).
    pub omega_b1: f64,
    /// Rabi frequency of laser 2 on |b> <-> |e> (signed).
    pub omega_b2: f64,
    /// Cavity parameters indexed by [`Bond::index`].
    pub cavity: [CavityParams; 3],
}

/// Errors raised by parameter validation.
#[derive(Debug, Error)]
pub enum ParamsError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
}

impl SystemParams {
    /// |b> -> |e> splitting.
    pub fn omega_eb(&self) -> f64 {
        self.omega_ea - self.omega_ba
    }

    /// Laser-1 detuning from the a-e transition.
    pub fn delta_a1(&self) -> f64 {
        self.omega_ea - self.nu1
    }

    /// Laser-2 detuning from the a-e transition.
    pub fn delta_a2(&self) -> f64 {
        self.omega_ea - self.nu2
    }

    /// Laser-1 detuning from the b-e transition.
    pub fn delta_b1(&self) -> f64 {
        self.omega_eb() - self.nu1
    }

    /// Laser-2 detuning from the b-e transition.
    pub fn delta_b2(&self) -> f64 {
        self.omega_eb() - self.nu2
    }

    /// Cavity-mode detuning from the a-e transition.
    pub fn delta_a(&self, k: Bond) -> f64 {
        self.omega_ea - self.cavity[k.index()].nu
    }

    /// Cavity-mode detuning from the b-e transition.
    pub fn delta_b(&self, k: Bond) -> f64 {
        self.omega_eb() - self.cavity[k.index()].nu
    }

    /// The cavity parameters along one bond direction.
    pub fn mode(&self, k: Bond) -> &CavityParams {
        &self.cavity[k.index()]
    }

    /// Largest cavity-coupling magnitude.
    pub fn max_coupling(&self) -> f64 {
        self.cavity
            .iter()
            .flat_map(|c| [c.g_a.abs(), c.g_b.abs()])
            .fold(0.0, f64::max)
    }

    /// Largest Rabi-frequency magnitude.
    pub fn max_rabi(&self) -> f64 {
        [self.omega_a1, self.omega_a2, self.omega_b1, self.omega_b2]
            .iter()
            .map(|o| o.abs())
            .fold(0.0, f64::max)
    }

    /// Smallest laser-detuning magnitude.
    pub fn min_laser_detuning(&self) -> f64 {
        [self.delta_a1(), self.delta_a2(), self.delta_b1(), self.delta_b2()]
            .iter()
            .map(|d| d.abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// Smallest cavity-detuning magnitude.
    pub fn min_cavity_detuning(&self) -> f64 {
        Bond::ALL
            .iter()
            .flat_map(|&k| [self.delta_a(k).abs(), self.delta_b(k).abs()])
            .fold(f64::INFINITY, f64::min)
    }

    /// Ratio of the smallest detuning to the largest coupling/drive; the
    /// large-detuning treatment assumes this is much greater than one.
    pub fn hierarchy_ratio(&self) -> f64 {
        let strong = self.max_coupling().max(self.max_rabi());
        let weak = self.min_laser_detuning().min(self.min_cavity_detuning());
        if strong == 0.0 {
            f64::INFINITY
        } else {
            weak / strong
        }
    }

    /// Hard validity checks plus advisory warnings.
    ///
    /// Errors on structurally invalid input (non-finite values, non-positive
    /// ground-state splitting). Returns human-readable warnings when the
    /// parameter regime is outside the assumptions of the effective theory.
    pub fn validate(&self) -> Result<Vec<String>, ParamsError> {
        let named = [
            ("omega_ea", self.omega_ea),
            ("omega_ba", self.omega_ba),
            ("nu1", self.nu1),
            ("nu2", self.nu2),
            ("omega_a1", self.omega_a1),
            ("omega_a2", self.omega_a2),
            ("omega_b1", self.omega_b1),
            ("omega_b2", self.omega_b2),
        ];
        for (name, value) in named {
            if !value.is_finite() {
                return Err(ParamsError::Invalid(format!("{name} is not finite")));
            }
        }
        for k in Bond::ALL {
            let c = self.mode(k);
            for (name, value) in [("nu", c.nu), ("g_a", c.g_a), ("g_b", c.g_b), ("t", c.t)] {
                if !value.is_finite() {
                    return Err(ParamsError::Invalid(format!(
                        "cavity.{}.{name} is not finite",
                        k.label()
                    )));
                }
            }
        }
        if self.omega_ba <= 0.0 {
            return Err(ParamsError::Invalid(
                "omega_ba must be positive (|b> lies above |a>)".into(),
            ));
        }

        let mut warnings = Vec::new();
        let strong = self.max_coupling().max(self.max_rabi());
        if strong > 0.0 && self.omega_ba < 10.0 * strong {
            warnings.push(format!(
                "omega_ba = {} is not large compared to the couplings/drives (max {}); \
                 the two-photon selection arguments assume omega_ba dominates",
                self.omega_ba, strong
            ));
        }
        let ratio = self.hierarchy_ratio();
        if ratio < 5.0 {
            warnings.push(format!(
                "large-detuning hierarchy is weak: min detuning / max coupling = {ratio:.3}"
            ));
        }
        Ok(warnings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sample() -> SystemParams {
        SystemParams {
            omega_ea: 5000.0,
            omega_ba: 40.0,
            nu1: 4980.0,
            nu2: 4900.0,
            omega_a1: 0.1,
            omega_a2: 0.0,
            omega_b1: 0.0,
            omega_b2: 0.1,
            cavity: [
                CavityParams { nu: 4940.0, g_a: 1.0, g_b: 1.0, t: 0.001 },
                CavityParams { nu: 4940.0, g_a: 1.0, g_b: -1.0, t: 0.001 },
                CavityParams { nu: 4940.0, g_a: 1.0, g_b: -1.0, t: 0.001 },
            ],
        }
    }

    #[test]
    fn detunings_follow_frequencies() {
        let p = sample();
        assert_eq!(p.delta_a1(), 20.0);
        assert_eq!(p.delta_a2(), 100.0);
        assert_eq!(p.delta_b1(), -20.0);
        assert_eq!(p.delta_b2(), 60.0);
        assert_eq!(p.delta_a(Bond::X), 60.0);
        assert_eq!(p.delta_b(Bond::Z), 20.0);
    }

    #[test]
    fn validation_flags_bad_splitting() {
        let mut p = sample();
        p.omega_ba = -1.0;
        assert!(p.validate().is_err());
    }

    #[test]
    fn validation_warns_on_weak_hierarchy() {
        let mut p = sample();
        p.omega_a1 = 30.0;
        let warnings = p.validate().unwrap();
        assert!(!warnings.is_empty());
    }
}

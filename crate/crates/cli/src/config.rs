//! Configuration loading.
//!
//! The input is a sectioned key-value file. Every section is walked
//! exhaustively: unknown keys are rejected in strict mode (warned about
//! otherwise), values must have the right type, and every number must be
//! finite. Physical sections default to the condition-solver input style —
//! the user gives the independent quantities (transition frequencies, one
//! laser detuning, per-mode detuning offsets, couplings, drive anchors) and
//! the resolved parameter set satisfies the operating conditions exactly.
//! Each physical section can opt into raw-frequency input with `raw = true`.

use std::collections::BTreeSet;

use toml::map::Map;
use toml::Value;

use cavity_honeycomb::effective::{
    derive_scales, solve_conditions, CavityFrequencySpec, ConditionSolveSpec, ConditionTolerances,
    CouplingSpec, DerivedScales, FrequencySpec, RabiSpec, Regime,
};
use cavity_honeycomb::kitaev::Boundary;
use cavity_honeycomb::params::{Bond, SystemParams};

use crate::CliError;

fn config_err(section: &str, key: &str, what: &str) -> CliError {
    CliError::Config(format!("[{section}] {key}: {what}"))
}

/// A section walker: typed getters mark keys as consumed so that leftovers
/// can be reported precisely.
struct Section<'a> {
    name: String,
    table: &'a Map<String, Value>,
    seen: BTreeSet<String>,
}

impl<'a> Section<'a> {
    fn new(name: impl Into<String>, table: &'a Map<String, Value>) -> Section<'a> {
        Section { name: name.into(), table, seen: BTreeSet::new() }
    }

    fn get(&mut self, key: &str) -> Option<&'a Value> {
        let value = self.table.get(key);
        if value.is_some() {
            self.seen.insert(key.to_string());
        }
        value
    }

    fn has(&self, key: &str) -> bool {
        self.table.contains_key(key)
    }

    fn float(&mut self, key: &str) -> Result<Option<f64>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Float(x)) if x.is_finite() => Ok(Some(*x)),
            Some(Value::Integer(i)) => Ok(Some(*i as f64)),
            Some(Value::Float(_)) => {
                Err(config_err(&self.name, key, "must be a finite number"))
            }
            Some(_) => Err(config_err(&self.name, key, "must be a number")),
        }
    }

    fn require_float(&mut self, key: &str) -> Result<f64, CliError> {
        self.float(key)?
            .ok_or_else(|| config_err(&self.name, key, "is required"))
    }

    fn integer(&mut self, key: &str) -> Result<Option<i64>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Integer(i)) => Ok(Some(*i)),
            Some(_) => Err(config_err(&self.name, key, "must be an integer")),
        }
    }

    fn size(&mut self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.integer(key)? {
            None => Ok(default),
            Some(i) if i >= 0 => Ok(i as usize),
            Some(_) => Err(config_err(&self.name, key, "must be non-negative")),
        }
    }

    fn boolean(&mut self, key: &str, default: bool) -> Result<bool, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(Value::Boolean(b)) => Ok(*b),
            Some(_) => Err(config_err(&self.name, key, "must be a boolean")),
        }
    }

    fn string(&mut self, key: &str) -> Result<Option<&'a str>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.as_str())),
            Some(_) => Err(config_err(&self.name, key, "must be a string")),
        }
    }

    fn forbid(&mut self, key: &str, why: &str) -> Result<(), CliError> {
        if self.get(key).is_some() {
            return Err(config_err(&self.name, key, why));
        }
        Ok(())
    }

    /// Report (strict) or record (lenient) any keys never consumed.
    fn finish(self, strict: bool, warnings: &mut Vec<String>) -> Result<(), CliError> {
        let unknown: Vec<String> = self
            .table
            .keys()
            .filter(|k| !self.seen.contains(*k))
            .map(|k| format!("[{}] {k}", self.name))
            .collect();
        if unknown.is_empty() {
            return Ok(());
        }
        if strict {
            Err(CliError::Config(format!("unknown keys: {}", unknown.join(", "))))
        } else {
            for key in unknown {
                warnings.push(format!("ignoring unknown key {key}"));
            }
            Ok(())
        }
    }
}

fn as_table<'a>(
    section: &str,
    key: &str,
    value: &'a Value,
) -> Result<&'a Map<String, Value>, CliError> {
    value
        .as_table()
        .ok_or_else(|| config_err(section, key, "must be a table"))
}

#[derive(Clone, Debug)]
pub struct AtomSection {
    pub omega_ea: f64,
    pub omega_ba: f64,
}

#[derive(Clone, Debug)]
pub enum RabiInput {
    Table { omega_a1_scale: f64, omega_a2_scale: f64 },
    Raw { omega_a1: f64, omega_a2: f64 },
}

#[derive(Clone, Debug)]
pub struct DriveSection {
    pub frequencies: FrequencySpec,
    pub rabi: RabiInput,
    pub omega_b1: f64,
    pub omega_b2: f64,
}

#[derive(Clone, Debug)]
pub struct CavityMode {
    pub frequency: CavityFrequencySpec,
    pub g_a: Option<f64>,
    pub g_b: f64,
    pub t: f64,
}

impl Default for CavityMode {
    fn default() -> CavityMode {
        // An absent mode is dark: matched frequency, no coupling, no hopping.
        CavityMode {
            frequency: CavityFrequencySpec::Solve { delta_diff: 0.0 },
            g_a: None,
            g_b: 0.0,
            t: 0.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LatticeSection {
    pub l1: usize,
    pub l2: usize,
    pub boundary: Boundary,
}

#[derive(Clone, Debug)]
pub struct Numerics {
    pub n_max: usize,
    pub ed_limit: usize,
    pub equality_tol: f64,
    pub hierarchy_ratio: f64,
    pub momentum_grid: usize,
    pub gapless_tol: f64,
    pub deg_tol: f64,
    pub regime: Regime,
}

impl Default for Numerics {
    fn default() -> Numerics {
        Numerics {
            n_max: 2,
            ed_limit: 16,
            equality_tol: 1e-9,
            hierarchy_ratio: 10.0,
            momentum_grid: 64,
            gapless_tol: 1e-8,
            deg_tol: 1e-9,
            regime: Regime::General,
        }
    }
}

impl Numerics {
    pub fn tolerances(&self) -> ConditionTolerances {
        ConditionTolerances {
            equality: self.equality_tol,
            hierarchy_ratio: self.hierarchy_ratio,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecaySection {
    pub gamma: f64,
    pub kappa: f64,
}

#[derive(Clone, Debug)]
pub struct ValidateBondBlock {
    pub bonds: Option<Vec<Bond>>,
    pub scales: Vec<f64>,
}

impl Default for ValidateBondBlock {
    fn default() -> ValidateBondBlock {
        ValidateBondBlock { bonds: None, scales: vec![1.0] }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidateAtomBlock {
    pub duration: Option<f64>,
    pub n_max: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct KitaevEdBlock {
    /// Explicit (j_x, j_y, j_z, b); absent means "derive from the physical
    /// sections".
    pub couplings: Option<(f64, f64, f64, f64)>,
    pub levels: usize,
}

impl Default for KitaevEdBlock {
    fn default() -> KitaevEdBlock {
        KitaevEdBlock { couplings: None, levels: 8 }
    }
}

/// One scan axis: a fixed value or an inclusive linear sweep.
#[derive(Clone, Debug)]
pub enum Axis {
    Fixed(f64),
    Sweep { start: f64, stop: f64, steps: usize },
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            Axis::Fixed(v) => vec![v],
            Axis::Sweep { start, stop, steps } => match steps {
                0 => Vec::new(),
                1 => vec![start],
                _ => (0..steps)
                    .map(|i| start + (stop - start) * i as f64 / (steps - 1) as f64)
                    .collect(),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct PhaseScanBlock {
    pub j_x: Axis,
    pub j_y: Axis,
    pub j_z: Axis,
    pub b: f64,
}

#[derive(Clone, Debug, Default)]
pub struct FeasibilityBlock {
    pub preset: Option<String>,
}

/// The fully parsed configuration file.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub atom: Option<AtomSection>,
    pub drive: Option<DriveSection>,
    pub cavity: [CavityMode; 3],
    pub lattice: Option<LatticeSection>,
    pub numerics: Numerics,
    pub decay: Option<DecaySection>,
    pub validate_bond: ValidateBondBlock,
    pub validate_atom: ValidateAtomBlock,
    pub kitaev_ed: KitaevEdBlock,
    pub phase_scan: Option<PhaseScanBlock>,
    pub feasibility: FeasibilityBlock,
    /// Non-fatal findings recorded while parsing (lenient mode only).
    pub warnings: Vec<String>,
}

fn parse_atom(
    table: &Map<String, Value>,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<AtomSection, CliError> {
    let mut s = Section::new("atom", table);
    let omega_ea = s.require_float("omega_ea")?;
    let omega_ba = s.require_float("omega_ba")?;
    if omega_ba <= 0.0 {
        return Err(config_err("atom", "omega_ba", "must be positive"));
    }
    s.finish(strict, warnings)?;
    Ok(AtomSection { omega_ea, omega_ba })
}

fn parse_drive(
    table: &Map<String, Value>,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<DriveSection, CliError> {
    let mut s = Section::new("drive", table);
    let raw = s.boolean("raw", false)?;
    let frequencies = if raw {
        s.forbid("delta_a2", "conflicts with raw = true (give nu1 and nu2 directly)")?;
        FrequencySpec::Raw { nu1: s.require_float("nu1")?, nu2: s.require_float("nu2")? }
    } else {
        s.forbid("nu1", "requires raw = true (the solver derives the laser frequencies)")?;
        s.forbid("nu2", "requires raw = true (the solver derives the laser frequencies)")?;
        FrequencySpec::Solve { delta_a2: s.require_float("delta_a2")? }
    };
    let rabi = if s.has("Omega_a1") || s.has("Omega_a2") {
        s.forbid("Omega_a1_scale", "conflicts with explicit Omega_a1/Omega_a2")?;
        s.forbid("Omega_a2_scale", "conflicts with explicit Omega_a1/Omega_a2")?;
        RabiInput::Raw {
            omega_a1: s.require_float("Omega_a1")?,
            omega_a2: s.require_float("Omega_a2")?,
        }
    } else {
        RabiInput::Table {
            omega_a1_scale: s.float("Omega_a1_scale")?.unwrap_or(1.0),
            omega_a2_scale: s.float("Omega_a2_scale")?.unwrap_or(1.0),
        }
    };
    let omega_b1 = s.float("Omega_b1")?.unwrap_or(0.0);
    let omega_b2 = s.float("Omega_b2")?.unwrap_or(0.0);
    s.finish(strict, warnings)?;
    Ok(DriveSection { frequencies, rabi, omega_b1, omega_b2 })
}

fn parse_cavity_mode(
    label: &str,
    table: &Map<String, Value>,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<CavityMode, CliError> {
    let name = format!("cavity.{label}");
    let mut s = Section::new(name, table);
    let raw = s.boolean("raw", false)?;
    let (frequency, g_a) = if raw {
        s.forbid("delta_diff", "conflicts with raw = true (give nu directly)")?;
        let nu = s.require_float("nu")?;
        let g_a = Some(s.require_float("g_a")?);
        (CavityFrequencySpec::Raw { nu }, g_a)
    } else {
        s.forbid("nu", "requires raw = true (the solver derives the mode frequency)")?;
        let delta_diff = s.float("delta_diff")?.unwrap_or(0.0);
        (CavityFrequencySpec::Solve { delta_diff }, s.float("g_a")?)
    };
    let g_b = s.float("g_b")?.unwrap_or(0.0);
    let t = s.float("t")?.unwrap_or(0.0);
    s.finish(strict, warnings)?;
    Ok(CavityMode { frequency, g_a, g_b, t })
}

fn parse_cavity(
    table: &Map<String, Value>,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<[CavityMode; 3], CliError> {
    let mut modes = [CavityMode::default(), CavityMode::default(), CavityMode::default()];
    let mut s = Section::new("cavity", table);
    for bond in Bond::ALL {
        let label = bond.label();
        if let Some(value) = s.get(label) {
            let inner = as_table("cavity", label, value)?;
            modes[bond.index()] = parse_cavity_mode(label, inner, strict, warnings)?;
        }
    }
    s.finish(strict, warnings)?;
    Ok(modes)
}

fn parse_lattice(
    table: &Map<String, Value>,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<LatticeSection, CliError> {
    let mut s = Section::new("lattice", table);
    let l1 = s.size("L1", 0)?;
    let l2 = s.size("L2", 0)?;
    if !s.has("L1") || l1 == 0 {
        return Err(config_err("lattice", "L1", "is required and must be at least 1"));
    }
    if !s.has("L2") || l2 == 0 {
        return Err(config_err("lattice", "L2", "is required and must be at least 1"));
    }
    let boundary = match s.string("boundary")?.unwrap_or("periodic") {
        "periodic" => Boundary::Periodic,
        "open" => Boundary::Open,
        other => {
            return Err(config_err(
                "lattice",
                "boundary",
                &format!("must be \"periodic\" or \"open\", got \"{other}\""),
            ))
        }
    };
    s.finish(strict, warnings)?;
    Ok(LatticeSection { l1, l2, boundary })
}

fn parse_numerics(
    table: &Map<String, Value>,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<Numerics, CliError> {
    let defaults = Numerics::default();
    let mut s = Section::new("numerics", table);
    let n_max = s.size("n_max", defaults.n_max)?;
    let ed_limit = s.size("ed_limit", defaults.ed_limit)?;
    let momentum_grid = s.size("momentum_grid", defaults.momentum_grid)?;
    let equality_tol = s.float("equality_tol")?.unwrap_or(defaults.equality_tol);
    let hierarchy_ratio = s.float("hierarchy_ratio")?.unwrap_or(defaults.hierarchy_ratio);
    let gapless_tol = s.float("gapless_tol")?.unwrap_or(defaults.gapless_tol);
    let deg_tol = s.float("deg_tol")?.unwrap_or(defaults.deg_tol);
    for (key, value) in
        [("equality_tol", equality_tol), ("hierarchy_ratio", hierarchy_ratio),
         ("gapless_tol", gapless_tol), ("deg_tol", deg_tol)]
    {
        if value < 0.0 {
            return Err(config_err("numerics", key, "must be non-negative"));
        }
    }
    let regime = match s.string("regime")?.unwrap_or("general") {
        "simple" => Regime::Simple,
        "general" => Regime::General,
        other => {
            return Err(config_err(
                "numerics",
                "regime",
                &format!("must be \"simple\" or \"general\", got \"{other}\""),
            ))
        }
    };
    s.finish(strict, warnings)?;
    Ok(Numerics {
        n_max,
        ed_limit,
        equality_tol,
        hierarchy_ratio,
        momentum_grid,
        gapless_tol,
        deg_tol,
        regime,
    })
}

fn parse_decay(
    table: &Map<String, Value>,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<DecaySection, CliError> {
    let mut s = Section::new("decay", table);
    let gamma = s.require_float("gamma")?;
    let kappa = s.require_float("kappa")?;
    for (key, value) in [("gamma", gamma), ("kappa", kappa)] {
        if value < 0.0 {
            return Err(config_err("decay", key, "must be non-negative"));
        }
    }
    s.finish(strict, warnings)?;
    Ok(DecaySection { gamma, kappa })
}

fn parse_bond_label(section: &str, key: &str, label: &str) -> Result<Bond, CliError> {
    match label {
        "x" => Ok(Bond::X),
        "y" => Ok(Bond::Y),
        "z" => Ok(Bond::Z),
        other => Err(config_err(
            section,
            key,
            &format!("bond labels must be \"x\", \"y\", or \"z\", got \"{other}\""),
        )),
    }
}

fn parse_validate_bond(
    table: &Map<String, Value>,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<ValidateBondBlock, CliError> {
    let mut s = Section::new("validate_bond", table);
    let bonds = match s.get("bonds") {
        None => None,
        Some(Value::Array(items)) => {
            let mut parsed = Vec::new();
            for item in items {
                match item {
                    Value::String(label) => {
                        parsed.push(parse_bond_label("validate_bond", "bonds", label)?)
                    }
                    _ => {
                        return Err(config_err(
                            "validate_bond",
                            "bonds",
                            "must be an array of bond labels",
                        ))
                    }
                }
            }
            Some(parsed)
        }
        Some(_) => {
            return Err(config_err("validate_bond", "bonds", "must be an array of bond labels"))
        }
    };
    let scales = match s.get("scales") {
        None => vec![1.0],
        Some(Value::Array(items)) => {
            let mut parsed = Vec::new();
            for item in items {
                let v = match item {
                    Value::Float(x) => *x,
                    Value::Integer(i) => *i as f64,
                    _ => {
                        return Err(config_err(
                            "validate_bond",
                            "scales",
                            "must be an array of numbers",
                        ))
                    }
                };
                if !(v.is_finite() && v > 0.0) {
                    return Err(config_err(
                        "validate_bond",
                        "scales",
                        "entries must be positive finite numbers",
                    ));
                }
                parsed.push(v);
            }
            parsed
        }
        Some(_) => {
            return Err(config_err("validate_bond", "scales", "must be an array of numbers"))
        }
    };
    s.finish(strict, warnings)?;
    Ok(ValidateBondBlock { bonds, scales })
}

fn parse_validate_atom(
    table: &Map<String, Value>,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<ValidateAtomBlock, CliError> {
    let mut s = Section::new("validate_atom", table);
    let duration = s.float("duration")?;
    if let Some(d) = duration {
        if d <= 0.0 {
            return Err(config_err("validate_atom", "duration", "must be positive"));
        }
    }
    let n_max = s.integer("n_max")?.map(|i| i.max(0) as usize);
    s.finish(strict, warnings)?;
    Ok(ValidateAtomBlock { duration, n_max })
}

fn parse_kitaev_ed(
    table: &Map<String, Value>,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<KitaevEdBlock, CliError> {
    let mut s = Section::new("kitaev_ed", table);
    let any = s.has("j_x") || s.has("j_y") || s.has("j_z") || s.has("b");
    let couplings = if any {
        let j_x = s.require_float("j_x")?;
        let j_y = s.require_float("j_y")?;
        let j_z = s.require_float("j_z")?;
        let b = s.float("b")?.unwrap_or(0.0);
        Some((j_x, j_y, j_z, b))
    } else {
        None
    };
    let levels = s.size("levels", 8)?;
    if levels == 0 {
        return Err(config_err("kitaev_ed", "levels", "must be at least 1"));
    }
    s.finish(strict, warnings)?;
    Ok(KitaevEdBlock { couplings, levels })
}

fn parse_axis(section: &str, key: &str, value: &Value) -> Result<Axis, CliError> {
    match value {
        Value::Float(x) if x.is_finite() => Ok(Axis::Fixed(*x)),
        Value::Float(_) => Err(config_err(section, key, "must be finite")),
        Value::Integer(i) => Ok(Axis::Fixed(*i as f64)),
        Value::Table(inner) => {
            let name = format!("{section}.{key}");
            let mut s = Section::new(name, inner);
            let start = s.require_float("start")?;
            let stop = s.require_float("stop")?;
            let steps = s.size("steps", usize::MAX)?;
            if steps == usize::MAX {
                return Err(config_err(section, key, "sweep requires a steps count"));
            }
            // Inline sweep tables are always checked strictly: a typo here
            // would silently change the scanned grid.
            s.finish(true, &mut Vec::new())?;
            Ok(Axis::Sweep { start, stop, steps })
        }
        _ => Err(config_err(
            section,
            key,
            "must be a number or a {start, stop, steps} table",
        )),
    }
}

fn parse_phase_scan(
    table: &Map<String, Value>,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<PhaseScanBlock, CliError> {
    let mut s = Section::new("phase_scan", table);
    let axis = |s: &mut Section, key: &str| -> Result<Axis, CliError> {
        match s.get(key) {
            Some(value) => parse_axis("phase_scan", key, value),
            None => Err(config_err("phase_scan", key, "is required")),
        }
    };
    let j_x = axis(&mut s, "j_x")?;
    let j_y = axis(&mut s, "j_y")?;
    let j_z = axis(&mut s, "j_z")?;
    let b = s.float("b")?.unwrap_or(0.0);
    s.finish(strict, warnings)?;
    Ok(PhaseScanBlock { j_x, j_y, j_z, b })
}

fn parse_feasibility(
    table: &Map<String, Value>,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<FeasibilityBlock, CliError> {
    let mut s = Section::new("feasibility", table);
    let preset = s.string("preset")?.map(str::to_string);
    s.finish(strict, warnings)?;
    Ok(FeasibilityBlock { preset })
}

/// Parse and validate a configuration document.
pub fn load(text: &str, strict: bool) -> Result<RunConfig, CliError> {
    let root_value: Value = text
        .parse()
        .map_err(|e| CliError::Config(format!("cannot parse config: {e}")))?;
    let root = root_value
        .as_table()
        .ok_or_else(|| CliError::Config("config must be a table of sections".into()))?;

    let mut warnings = Vec::new();
    let mut cfg = RunConfig {
        atom: None,
        drive: None,
        cavity: [CavityMode::default(), CavityMode::default(), CavityMode::default()],
        lattice: None,
        numerics: Numerics::default(),
        decay: None,
        validate_bond: ValidateBondBlock::default(),
        validate_atom: ValidateAtomBlock::default(),
        kitaev_ed: KitaevEdBlock::default(),
        phase_scan: None,
        feasibility: FeasibilityBlock::default(),
        warnings: Vec::new(),
    };

    let mut top = Section::new("config", root);
    if let Some(value) = top.get("atom") {
        cfg.atom = Some(parse_atom(as_table("config", "atom", value)?, strict, &mut warnings)?);
    }
    if let Some(value) = top.get("drive") {
        cfg.drive =
            Some(parse_drive(as_table("config", "drive", value)?, strict, &mut warnings)?);
    }
    if let Some(value) = top.get("cavity") {
        cfg.cavity = parse_cavity(as_table("config", "cavity", value)?, strict, &mut warnings)?;
    }
    if let Some(value) = top.get("lattice") {
        cfg.lattice =
            Some(parse_lattice(as_table("config", "lattice", value)?, strict, &mut warnings)?);
    }
    if let Some(value) = top.get("numerics") {
        cfg.numerics =
            parse_numerics(as_table("config", "numerics", value)?, strict, &mut warnings)?;
    }
    if let Some(value) = top.get("decay") {
        cfg.decay =
            Some(parse_decay(as_table("config", "decay", value)?, strict, &mut warnings)?);
    }
    if let Some(value) = top.get("validate_bond") {
        cfg.validate_bond = parse_validate_bond(
            as_table("config", "validate_bond", value)?,
            strict,
            &mut warnings,
        )?;
    }
    if let Some(value) = top.get("validate_atom") {
        cfg.validate_atom = parse_validate_atom(
            as_table("config", "validate_atom", value)?,
            strict,
            &mut warnings,
        )?;
    }
    if let Some(value) = top.get("kitaev_ed") {
        cfg.kitaev_ed =
            parse_kitaev_ed(as_table("config", "kitaev_ed", value)?, strict, &mut warnings)?;
    }
    if let Some(value) = top.get("phase_scan") {
        cfg.phase_scan =
            Some(parse_phase_scan(as_table("config", "phase_scan", value)?, strict, &mut warnings)?);
    }
    if let Some(value) = top.get("feasibility") {
        cfg.feasibility =
            parse_feasibility(as_table("config", "feasibility", value)?, strict, &mut warnings)?;
    }
    top.finish(strict, &mut warnings)?;

    cfg.warnings = warnings;
    Ok(cfg)
}

/// The resolved physical inputs shared by the physics workflows.
pub struct Physics {
    pub params: SystemParams,
    pub scales: DerivedScales,
    pub regime: Regime,
}

/// Resolve the physical sections into a full parameter set through the
/// operating-condition solver (raw sections pass through unchanged).
pub fn resolve_physics(cfg: &RunConfig) -> Result<Physics, CliError> {
    let atom = cfg
        .atom
        .as_ref()
        .ok_or_else(|| CliError::Config("this workflow requires the [atom] section".into()))?;
    let drive = cfg
        .drive
        .as_ref()
        .ok_or_else(|| CliError::Config("this workflow requires the [drive] section".into()))?;

    let pick = |i: usize| -> (CavityFrequencySpec, CouplingSpec, f64) {
        let mode = &cfg.cavity[i];
        (mode.frequency, CouplingSpec { g_b: mode.g_b, g_a: mode.g_a }, mode.t)
    };
    let (fx, cx, tx) = pick(0);
    let (fy, cy, ty) = pick(1);
    let (fz, cz, tz) = pick(2);

    let rabi = match drive.rabi {
        RabiInput::Raw { omega_a1, omega_a2 } => RabiSpec::Raw { omega_a1, omega_a2 },
        RabiInput::Table { omega_a1_scale, omega_a2_scale } => RabiSpec::Table {
            regime: cfg.numerics.regime,
            omega_a1_scale,
            omega_a2_scale,
        },
    };
    let spec = ConditionSolveSpec {
        omega_ea: atom.omega_ea,
        omega_ba: atom.omega_ba,
        frequencies: drive.frequencies,
        cavity_frequencies: [fx, fy, fz],
        couplings: [cx, cy, cz],
        t: [tx, ty, tz],
        omega_b1: drive.omega_b1,
        omega_b2: drive.omega_b2,
        rabi,
    };
    let params = solve_conditions(&spec)
        .map_err(|e| CliError::Config(format!("resolving the physical sections: {e}")))?;
    let scales = derive_scales(&params)
        .map_err(|e| CliError::Config(format!("resolving the physical sections: {e}")))?;
    Ok(Physics { params, scales, regime: cfg.numerics.regime })
}

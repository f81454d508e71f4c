//! The seven workflow runners.
//!
//! Each runner consumes the parsed configuration and produces a
//! [`WorkflowOutput`]: a JSON-ready `results` value, an optional
//! operating-condition report, an optional tabular view (used for CSV), and
//! any warnings accumulated along the way. Runners never print; emission is
//! the caller's job so that output stays byte-deterministic.

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use cavity_honeycomb::effective::{
    check_conditions, effective_couplings, kitaev_couplings, ConditionReport, EffectiveCouplings,
    EffectiveError, KitaevCouplings, Regime,
};
use cavity_honeycomb::feasibility::{
    check_regime, cooperativity_scenarios, estimate, FeasibilityInput,
};
use cavity_honeycomb::kitaev::{
    build_kitaev_hamiltonian, build_lattice, ed_ground_and_gap, freefermion_gap,
    plaquette_operators, Boundary,
};
use cavity_honeycomb::microscopic::{
    build_bond_model, extract_bond_coupling, simulate_raman_site, FockCutoff, MicroscopicError,
};
use cavity_honeycomb::params::{Bond, SystemParams};
use cavity_honeycomb::qops::{eig_low, EigOptions};

use crate::config::{resolve_physics, Physics, RunConfig};
use crate::emit::{float, opt_float, Cell, Table};
use crate::CliError;

/// Everything a workflow hands back for emission.
pub struct WorkflowOutput {
    pub results: Value,
    pub conditions: Option<Value>,
    /// Preferred tabular view; workflows without one fall back to a
    /// flattened key/value table when CSV is requested.
    pub table: Option<Table>,
    pub warnings: Vec<String>,
}

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

/// Structural input problems surface as configuration errors; genuine
/// numerical failures stay runtime errors.
fn micro_err(e: MicroscopicError) -> CliError {
    match e {
        MicroscopicError::Condition(_) | MicroscopicError::Input(_) => {
            CliError::Config(e.to_string())
        }
        other => CliError::Runtime(other.to_string()),
    }
}

/// `[f64; 3]` keyed by bond label.
fn bond_object(values: &[f64; 3]) -> Result<Value, CliError> {
    let mut map = Map::new();
    for bond in Bond::ALL {
        map.insert(bond.label().to_string(), float(values[bond.index()])?);
    }
    Ok(Value::Object(map))
}

fn json_condition_report(report: &ConditionReport) -> Result<Value, CliError> {
    let entries = report
        .entries
        .iter()
        .map(|e| {
            Ok(json!({
                "name": e.name,
                "kind": e.kind.label(),
                "satisfied": e.satisfied,
                "residual": float(e.residual)?,
            }))
        })
        .collect::<Result<Vec<Value>, CliError>>()?;
    Ok(json!({
        "context": report.context,
        "verdict": report.verdict(),
        "entries": entries,
    }))
}

fn condition_table(report: &ConditionReport) -> Table {
    let header = vec!["name".into(), "kind".into(), "satisfied".into(), "residual".into()];
    let rows = report
        .entries
        .iter()
        .map(|e| {
            vec![
                Cell::Str(e.name.clone()),
                Cell::Str(e.kind.label().to_string()),
                Cell::Bool(e.satisfied),
                Cell::Float(e.residual),
            ]
        })
        .collect();
    Table { header, rows }
}

fn json_params(params: &SystemParams) -> Result<Value, CliError> {
    let mut cavity = Map::new();
    for bond in Bond::ALL {
        let mode = &params.cavity[bond.index()];
        cavity.insert(
            bond.label().to_string(),
            json!({
                "nu": float(mode.nu)?,
                "g_a": float(mode.g_a)?,
                "g_b": float(mode.g_b)?,
                "t": float(mode.t)?,
            }),
        );
    }
    Ok(json!({
        "omega_ea": float(params.omega_ea)?,
        "omega_ba": float(params.omega_ba)?,
        "nu1": float(params.nu1)?,
        "nu2": float(params.nu2)?,
        "Omega_a1": float(params.omega_a1)?,
        "Omega_a2": float(params.omega_a2)?,
        "Omega_b1": float(params.omega_b1)?,
        "Omega_b2": float(params.omega_b2)?,
        "detunings": {
            "delta_a1": float(params.delta_a1())?,
            "delta_a2": float(params.delta_a2())?,
            "delta_b1": float(params.delta_b1())?,
            "delta_b2": float(params.delta_b2())?,
        },
        "cavity": Value::Object(cavity),
    }))
}

fn json_scales(physics: &Physics) -> Result<Value, CliError> {
    let s = &physics.scales;
    Ok(json!({
        "eta_a1": float(s.eta_a1)?,
        "eta_a2": float(s.eta_a2)?,
        "eta_b1": float(s.eta_b1)?,
        "eta_b2": float(s.eta_b2)?,
        "lambda_a": bond_object(&s.lambda_a)?,
        "lambda_b": bond_object(&s.lambda_b)?,
        "lambda": bond_object(&s.lambda)?,
        "a_1": bond_object(&s.a_1)?,
        "a_2": bond_object(&s.a_2)?,
        "gamma": bond_object(&s.gamma)?,
        "delta_diff": bond_object(&s.delta_diff)?,
        "epsilon": bond_object(&s.epsilon)?,
        "kappa_a": bond_object(&s.kappa_a)?,
        "kappa_b": bond_object(&s.kappa_b)?,
    }))
}

fn json_effective(couplings: &EffectiveCouplings) -> Result<Value, CliError> {
    let per_bond = |f: &dyn Fn(Bond) -> f64| -> Result<Value, CliError> {
        bond_object(&[f(Bond::X), f(Bond::Y), f(Bond::Z)])
    };
    Ok(json!({
        "regime": couplings.regime.label(),
        "b_x": float(couplings.b_x)?,
        "b_y": float(couplings.b_y)?,
        "b_z": float(couplings.b_z)?,
        "j_x1": float(couplings.j_x1)?,
        "j_x2": float(couplings.j_x2)?,
        "j_y1": float(couplings.j_y1)?,
        "j_y2": float(couplings.j_y2)?,
        "j_z1": float(couplings.j_z1)?,
        "j_z2": float(couplings.j_z2)?,
        "j_z3": float(couplings.j_z3)?,
        "coefficients": {
            "field": float(couplings.field_coefficient())?,
            "xx": per_bond(&|b| couplings.xx_coefficient(b))?,
            "yy": per_bond(&|b| couplings.yy_coefficient(b))?,
            "zz": per_bond(&|b| couplings.zz_coefficient(b))?,
        },
    }))
}

fn json_kitaev(kc: &KitaevCouplings, field_included: bool) -> Result<Value, CliError> {
    Ok(json!({
        "j_x": float(kc.j_x)?,
        "j_y": float(kc.j_y)?,
        "j_z": float(kc.j_z)?,
        "j_zc": float(kc.j_zc)?,
        "b": float(kc.b)?,
        "field_included": field_included,
    }))
}

/// Reduce the effective couplings to the anisotropic-exchange form, first at
/// the ideal point (no residual field), then with the controlled field.
fn reduce_to_kitaev(
    physics: &Physics,
    couplings: &EffectiveCouplings,
    cfg: &RunConfig,
    warnings: &mut Vec<String>,
) -> Result<Option<(KitaevCouplings, bool)>, CliError> {
    let tol = cfg.numerics.tolerances();
    match kitaev_couplings(couplings, &physics.scales, &physics.params, false, &tol) {
        Ok(kc) => Ok(Some((kc, false))),
        Err(EffectiveError::ConditionsNotMet(_)) => {
            match kitaev_couplings(couplings, &physics.scales, &physics.params, true, &tol) {
                Ok(kc) => {
                    warnings.push(
                        "z-drive balance is away from the ideal point; reporting the \
                         field-bearing reduction"
                            .into(),
                    );
                    Ok(Some((kc, true)))
                }
                Err(EffectiveError::ConditionsNotMet(what)) => {
                    warnings.push(format!(
                        "no anisotropic-exchange reduction at this operating point ({what})"
                    ));
                    Ok(None)
                }
                Err(e) => Err(runtime(e)),
            }
        }
        Err(e) => Err(runtime(e)),
    }
}

pub fn run_effective(cfg: &RunConfig) -> Result<WorkflowOutput, CliError> {
    let physics = resolve_physics(cfg)?;
    let mut warnings = cfg.warnings.clone();
    let couplings =
        effective_couplings(&physics.scales, &physics.params, physics.regime).map_err(runtime)?;
    let report = check_conditions(
        &physics.params,
        &physics.scales,
        physics.regime,
        &Bond::ALL,
        &cfg.numerics.tolerances(),
    );
    let kitaev = match reduce_to_kitaev(&physics, &couplings, cfg, &mut warnings)? {
        Some((kc, field_included)) => json_kitaev(&kc, field_included)?,
        None => Value::Null,
    };
    let results = json!({
        "params": json_params(&physics.params)?,
        "scales": json_scales(&physics)?,
        "couplings": json_effective(&couplings)?,
        "kitaev": kitaev,
    });
    Ok(WorkflowOutput {
        results,
        conditions: Some(json_condition_report(&report)?),
        table: None,
        warnings,
    })
}

pub fn run_audit(cfg: &RunConfig) -> Result<WorkflowOutput, CliError> {
    let physics = resolve_physics(cfg)?;
    let report = check_conditions(
        &physics.params,
        &physics.scales,
        physics.regime,
        &Bond::ALL,
        &cfg.numerics.tolerances(),
    );
    let results = json!({
        "context": report.context,
        "regime": physics.regime.label(),
        "verdict": report.verdict(),
    });
    Ok(WorkflowOutput {
        results,
        conditions: Some(json_condition_report(&report)?),
        table: Some(condition_table(&report)),
        warnings: cfg.warnings.clone(),
    })
}

/// One evaluated sweep point of the bond validation.
struct BondRow {
    bond: Bond,
    scale: f64,
    hierarchy: Option<f64>,
    j_analytic: f64,
    j_extracted: f64,
    rel_error: f64,
    b_extracted: f64,
    residual: f64,
    j_refined: f64,
    cutoff_shift: f64,
    weight_min: f64,
    separation: Option<f64>,
}

/// Walk deeper into the perturbative regime: dividing every drive amplitude
/// and tunnelling rate by `m` multiplies the hierarchy ratio by `m` while
/// leaving the detunings (and thus the balance conditions) untouched.
fn scaled_params(params: &SystemParams, m: f64) -> SystemParams {
    let mut p = params.clone();
    p.omega_a1 /= m;
    p.omega_a2 /= m;
    p.omega_b1 /= m;
    p.omega_b2 /= m;
    for mode in &mut p.cavity {
        mode.t /= m;
    }
    p
}

fn extract_at(
    params: &SystemParams,
    bond: Bond,
    n_max: usize,
) -> Result<(f64, f64, f64, f64, Option<f64>, [f64; 2], f64, f64), CliError> {
    let cutoff = FockCutoff::uniform(n_max);
    let model = build_bond_model(params, &cutoff, bond).map_err(micro_err)?;
    let dim = model.space.dim();
    let opts = EigOptions::default();
    let spectrum = eig_low(&model.hamiltonian, dim, &opts).map_err(runtime)?;
    let coupling = extract_bond_coupling(&model, &spectrum).map_err(runtime)?;
    let weight_min = coupling
        .zero_photon_weights
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    Ok((
        coupling.j_eff,
        coupling.b_eff,
        coupling.residual,
        weight_min,
        coupling.separation_ratio,
        model.amplitudes,
        model.tunneling,
        model.lambda,
    ))
}

fn evaluate_bond_point(
    base: &SystemParams,
    regime: Regime,
    n_max: usize,
    bond: Bond,
    scale: f64,
) -> Result<BondRow, CliError> {
    let params = scaled_params(base, scale);
    let scales = cavity_honeycomb::effective::derive_scales(&params).map_err(runtime)?;
    let couplings = effective_couplings(&scales, &params, regime).map_err(runtime)?;
    let j_analytic = match bond {
        Bond::X => couplings.xx_coefficient(Bond::X),
        Bond::Y => couplings.yy_coefficient(Bond::Y),
        Bond::Z => couplings.zz_coefficient(Bond::Z),
    };

    let (j_extracted, b_extracted, residual, weight_min, separation, amplitudes, tunneling, lambda) =
        extract_at(&params, bond, n_max)?;
    let (j_refined, ..) = extract_at(&params, bond, n_max + 1)?;

    let strongest = amplitudes[0]
        .abs()
        .max(amplitudes[1].abs())
        .max(tunneling.abs());
    let hierarchy = (strongest > 0.0).then(|| lambda.abs() / strongest);
    let rel_error = if j_analytic == 0.0 {
        j_extracted.abs()
    } else {
        (j_extracted - j_analytic).abs() / j_analytic.abs()
    };
    let shift_scale = j_extracted.abs().max(j_refined.abs());
    let cutoff_shift = if shift_scale == 0.0 {
        0.0
    } else {
        (j_refined - j_extracted).abs() / shift_scale
    };
    Ok(BondRow {
        bond,
        scale,
        hierarchy,
        j_analytic,
        j_extracted,
        rel_error,
        b_extracted,
        residual,
        j_refined,
        cutoff_shift,
        weight_min,
        separation,
    })
}

pub fn run_validate_bond(cfg: &RunConfig) -> Result<WorkflowOutput, CliError> {
    let physics = resolve_physics(cfg)?;
    let bonds: Vec<Bond> = match &cfg.validate_bond.bonds {
        Some(list) => list.clone(),
        None => Bond::ALL
            .iter()
            .copied()
            .filter(|b| physics.params.cavity[b.index()].t != 0.0)
            .collect(),
    };
    if bonds.is_empty() {
        return Err(CliError::Config(
            "[validate_bond] bonds: no cavity mode has a nonzero tunnelling rate; \
             list the bonds to validate explicitly"
                .into(),
        ));
    }

    let jobs: Vec<(Bond, f64)> = bonds
        .iter()
        .flat_map(|b| cfg.validate_bond.scales.iter().map(move |m| (*b, *m)))
        .collect();
    let n_max = cfg.numerics.n_max;
    let rows: Vec<BondRow> = jobs
        .par_iter()
        .map(|&(bond, scale)| evaluate_bond_point(&physics.params, physics.regime, n_max, bond, scale))
        .collect::<Result<Vec<_>, _>>()?;

    let header: Vec<String> = [
        "bond",
        "scale",
        "hierarchy_ratio",
        "j_analytic",
        "j_extracted",
        "rel_error",
        "b_extracted",
        "residual",
        "j_refined",
        "cutoff_shift",
        "weight_min",
        "separation",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();

    let mut table = Table { header, rows: Vec::new() };
    let mut json_rows = Vec::new();
    for row in &rows {
        table.rows.push(vec![
            Cell::Str(row.bond.label().to_string()),
            Cell::Float(row.scale),
            row.hierarchy.map_or(Cell::Null, Cell::Float),
            Cell::Float(row.j_analytic),
            Cell::Float(row.j_extracted),
            Cell::Float(row.rel_error),
            Cell::Float(row.b_extracted),
            Cell::Float(row.residual),
            Cell::Float(row.j_refined),
            Cell::Float(row.cutoff_shift),
            Cell::Float(row.weight_min),
            row.separation.map_or(Cell::Null, Cell::Float),
        ]);
        json_rows.push(json!({
            "bond": row.bond.label(),
            "scale": float(row.scale)?,
            "hierarchy_ratio": opt_float(row.hierarchy)?,
            "j_analytic": float(row.j_analytic)?,
            "j_extracted": float(row.j_extracted)?,
            "rel_error": float(row.rel_error)?,
            "b_extracted": float(row.b_extracted)?,
            "residual": float(row.residual)?,
            "j_refined": float(row.j_refined)?,
            "cutoff_shift": float(row.cutoff_shift)?,
            "weight_min": float(row.weight_min)?,
            "separation": opt_float(row.separation)?,
        }));
    }

    Ok(WorkflowOutput {
        results: json!({ "n_max": n_max, "rows": json_rows }),
        conditions: None,
        table: Some(table),
        warnings: cfg.warnings.clone(),
    })
}

pub fn run_validate_atom(cfg: &RunConfig) -> Result<WorkflowOutput, CliError> {
    let physics = resolve_physics(cfg)?;
    let n_max = cfg.validate_atom.n_max.unwrap_or(cfg.numerics.n_max);
    let cutoff = FockCutoff::uniform(n_max);
    let report = simulate_raman_site(&physics.params, &cutoff, cfg.validate_atom.duration)
        .map_err(micro_err)?;
    let results = json!({
        "reference_frequency": float(report.reference_frequency)?,
        "raw_frequency": opt_float(report.raw_frequency)?,
        "fitted_frequency": opt_float(report.fitted_frequency)?,
        "amplitude": opt_float(report.amplitude)?,
        "relative_error": opt_float(report.relative_error)?,
        "mean_excited_population": float(report.mean_excited_population)?,
        "occupancy_estimate": float(report.occupancy_estimate)?,
        "max_transfer": float(report.max_transfer)?,
        "samples": report.samples,
        "duration": float(report.duration)?,
        "max_norm_drift": float(report.max_norm_drift)?,
        "n_max": n_max,
    });
    Ok(WorkflowOutput {
        results,
        conditions: None,
        table: None,
        warnings: cfg.warnings.clone(),
    })
}

pub fn run_kitaev_ed(cfg: &RunConfig) -> Result<WorkflowOutput, CliError> {
    let lattice_cfg = cfg
        .lattice
        .as_ref()
        .ok_or_else(|| CliError::Config("this workflow requires the [lattice] section".into()))?;
    let lattice = build_lattice(lattice_cfg.l1, lattice_cfg.l2, lattice_cfg.boundary)
        .map_err(runtime)?;

    let mut warnings = cfg.warnings.clone();
    let mut conditions = None;
    let (kc, field_included) = match cfg.kitaev_ed.couplings {
        Some((j_x, j_y, j_z, b)) => (KitaevCouplings::from_bonds(j_x, j_y, j_z, b), b != 0.0),
        None => {
            let physics = resolve_physics(cfg)?;
            let couplings = effective_couplings(&physics.scales, &physics.params, physics.regime)
                .map_err(runtime)?;
            let report = check_conditions(
                &physics.params,
                &physics.scales,
                physics.regime,
                &Bond::ALL,
                &cfg.numerics.tolerances(),
            );
            conditions = Some(json_condition_report(&report)?);
            match reduce_to_kitaev(&physics, &couplings, cfg, &mut warnings)? {
                Some(pair) => pair,
                None => {
                    return Err(CliError::Runtime(
                        "the configured operating point does not reduce to an \
                         anisotropic-exchange model; fix the balance conditions or give \
                         couplings explicitly in [kitaev_ed]"
                            .into(),
                    ))
                }
            }
        }
    };

    let h = build_kitaev_hamiltonian(&kc, &lattice, cfg.numerics.ed_limit).map_err(runtime)?;
    let opts = EigOptions::default();
    let summary = ed_ground_and_gap(&h, &opts, cfg.numerics.deg_tol).map_err(runtime)?;
    let k = cfg.kitaev_ed.levels.min(h.dim());
    let spectrum = eig_low(&h, k, &opts).map_err(runtime)?;
    let ground = &spectrum.eigenvectors[0];

    let plaquettes = if lattice_cfg.boundary == Boundary::Periodic
        && lattice_cfg.l1 >= 2
        && lattice_cfg.l2 >= 2
    {
        let mut entries = Vec::new();
        for (index, w) in plaquette_operators(&lattice).map_err(runtime)?.iter().enumerate() {
            let hw = h.matmul(w).map_err(runtime)?;
            let wh = w.matmul(&h).map_err(runtime)?;
            let commutator_norm = hw.sub(&wh).map_err(runtime)?.frobenius_norm();
            let expectation = w.expectation(ground);
            entries.push(json!({
                "index": index,
                "commutator_norm": float(commutator_norm)?,
                "expectation": float(expectation.re)?,
            }));
        }
        Value::Array(entries)
    } else {
        warnings.push(
            "hexagon-flux diagnostics need a periodic lattice of at least 2 x 2 cells; skipped"
                .into(),
        );
        Value::Null
    };

    let levels = spectrum
        .eigenvalues
        .iter()
        .map(|&e| float(e))
        .collect::<Result<Vec<_>, _>>()?;
    let results = json!({
        "lattice": {
            "l1": lattice_cfg.l1,
            "l2": lattice_cfg.l2,
            "boundary": lattice_cfg.boundary.label(),
            "n_sites": lattice.n_sites,
        },
        "couplings": json_kitaev(&kc, field_included)?,
        "e0": float(summary.e0)?,
        "gap": float(summary.gap)?,
        "degeneracy": summary.degeneracy,
        "levels": Value::Array(levels),
        "plaquettes": plaquettes,
    });
    Ok(WorkflowOutput { results, conditions, table: None, warnings })
}

pub fn run_phase_scan(cfg: &RunConfig) -> Result<WorkflowOutput, CliError> {
    let block = cfg
        .phase_scan
        .as_ref()
        .ok_or_else(|| CliError::Config("this workflow requires the [phase_scan] section".into()))?;
    let mut warnings = cfg.warnings.clone();
    if block.b != 0.0 {
        warnings.push(
            "the thermodynamic classifier runs at zero field; b is echoed in the rows but \
             does not affect the gap"
                .into(),
        );
    }

    let xs = block.j_x.values();
    let ys = block.j_y.values();
    let zs = block.j_z.values();
    let mut points = Vec::with_capacity(xs.len() * ys.len() * zs.len());
    for &jx in &xs {
        for &jy in &ys {
            for &jz in &zs {
                points.push((jx, jy, jz));
            }
        }
    }

    let grid = cfg.numerics.momentum_grid;
    let tol = cfg.numerics.gapless_tol;
    let computed: Vec<_> = points
        .par_iter()
        .map(|&(jx, jy, jz)| freefermion_gap(jx, jy, jz, grid, tol))
        .collect();

    let header: Vec<String> = ["j_x", "j_y", "j_z", "b", "gap", "classification"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut table = Table { header, rows: Vec::new() };
    let mut json_rows = Vec::new();
    for point in &computed {
        let classification = if point.gapless { "gapless" } else { "gapped" };
        table.rows.push(vec![
            Cell::Float(point.j_x),
            Cell::Float(point.j_y),
            Cell::Float(point.j_z),
            Cell::Float(block.b),
            Cell::Float(point.gap),
            Cell::Str(classification.to_string()),
        ]);
        json_rows.push(json!({
            "j_x": float(point.j_x)?,
            "j_y": float(point.j_y)?,
            "j_z": float(point.j_z)?,
            "b": float(block.b)?,
            "gap": float(point.gap)?,
            "classification": classification,
        }));
    }

    Ok(WorkflowOutput {
        results: json!({ "momentum_grid": grid.max(64), "rows": json_rows }),
        conditions: None,
        table: Some(table),
        warnings,
    })
}

pub fn run_feasibility(cfg: &RunConfig) -> Result<WorkflowOutput, CliError> {
    let (input, context, description) = match &cfg.feasibility.preset {
        Some(name) => {
            let scenarios = cooperativity_scenarios();
            let scenario = scenarios.iter().find(|s| s.name == name.as_str()).ok_or_else(|| {
                let available: Vec<&str> = scenarios.iter().map(|s| s.name).collect();
                CliError::Config(format!(
                    "[feasibility] preset: unknown preset \"{name}\" (available: {})",
                    available.join(", ")
                ))
            })?;
            (scenario.input, scenario.name.to_string(), Some(scenario.description.to_string()))
        }
        None => {
            let decay = cfg.decay.as_ref().ok_or_else(|| {
                CliError::Config(
                    "this workflow requires the [decay] section (or a [feasibility] preset)"
                        .into(),
                )
            })?;
            let physics = resolve_physics(cfg)?;
            (
                FeasibilityInput::from_params(&physics.params, decay.gamma, decay.kappa),
                "configured system".to_string(),
                None,
            )
        }
    };

    let report = estimate(&input).map_err(runtime)?;
    let checks = check_regime(&report, &input, &cfg.numerics.tolerances());
    let ratio = |num: f64, den: f64| (den > 0.0).then(|| num / den);
    let results = json!({
        "context": context,
        "description": description.map_or(Value::Null, Value::String),
        "input": {
            "omega": float(input.omega)?,
            "g": float(input.g)?,
            "delta_laser": float(input.delta_laser)?,
            "delta_cavity": float(input.delta_cavity)?,
            "t": float(input.t)?,
            "gamma": float(input.gamma)?,
            "kappa": float(input.kappa)?,
        },
        "estimates": {
            "occupancy": float(report.occupancy)?,
            "photon_occupancy": float(report.photon_occupancy)?,
            "j_estimate": float(report.j_estimate)?,
            "gamma1": float(report.gamma1)?,
            "gamma2": float(report.gamma2)?,
            "j_over_gamma1": opt_float(ratio(report.j_estimate, report.gamma1))?,
            "j_over_gamma2": opt_float(ratio(report.j_estimate, report.gamma2))?,
            "mu": opt_float(report.mu)?,
            "eta": opt_float(report.eta)?,
            "cooperativity": opt_float(report.cooperativity)?,
        },
        "verdict": checks.verdict(),
    });
    Ok(WorkflowOutput {
        results,
        conditions: Some(json_condition_report(&checks)?),
        table: Some(condition_table(&checks)),
        warnings: cfg.warnings.clone(),
    })
}

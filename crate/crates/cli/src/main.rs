//! Command-line driver for the cavity-honeycomb simulation library.
//!
//! Exit codes: 0 on success, 2 for configuration problems (unreadable
//! file, parse error, invalid or unknown keys, missing sections, bad flag
//! values), 1 for runtime failures (solver breakdown, capacity limits,
//! non-finite results, unwritable output).

mod config;
mod emit;
mod workflows;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgAction, Parser, ValueEnum};
use serde_json::{json, Value};

use crate::emit::{flatten, render_csv, render_json, sha256_hex, write_report};
use crate::workflows::WorkflowOutput;

/// Error type shared by every CLI layer; the variant fixes the exit code.
#[derive(Debug)]
pub enum CliError {
    /// Problems with the user's input (exit code 2).
    Config(String),
    /// Failures while computing or writing results (exit code 1).
    Runtime(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Runtime(m) => m,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Workflow {
    /// Resolve the operating point and report scales, couplings, and the
    /// anisotropic-exchange reduction.
    Effective,
    /// Audit the operating-point balance conditions.
    Audit,
    /// Compare analytic bond couplings against two-site exact
    /// diagonalization across a perturbative sweep.
    ValidateBond,
    /// Time-evolve one driven site and compare against the two-level
    /// reduction.
    ValidateAtom,
    /// Exactly diagonalize the spin model on a honeycomb cluster.
    KitaevEd,
    /// Classify the thermodynamic phase over a coupling grid.
    PhaseScan,
    /// Estimate decoherence rates and regime margins.
    Feasibility,
}

impl Workflow {
    fn name(self) -> &'static str {
        match self {
            Workflow::Effective => "effective",
            Workflow::Audit => "audit",
            Workflow::ValidateBond => "validate-bond",
            Workflow::ValidateAtom => "validate-atom",
            Workflow::KitaevEd => "kitaev-ed",
            Workflow::PhaseScan => "phase-scan",
            Workflow::Feasibility => "feasibility",
        }
    }

    /// Sweep workflows default to CSV; single-report workflows to JSON.
    fn default_format(self) -> Format {
        match self {
            Workflow::ValidateBond | Workflow::PhaseScan => Format::Csv,
            _ => Format::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "cavity-honeycomb",
    version,
    about = "Simulations of an anisotropic spin model engineered from coupled \
             cavities with embedded three-level atoms"
)]
struct Cli {
    /// Workflow to run.
    #[arg(value_enum)]
    workflow: Workflow,

    /// Path to the run configuration (TOML).
    #[arg(long)]
    config: PathBuf,

    /// Directory the report file is written into.
    #[arg(long, default_value = ".")]
    out: PathBuf,

    /// Output format; defaults to csv for validate-bond and phase-scan,
    /// json otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,

    /// Reject unknown configuration keys (pass `--strict false` to demote
    /// them to warnings).
    #[arg(
        long,
        default_value_t = true,
        default_missing_value = "true",
        num_args = 0..=1,
        action = ArgAction::Set
    )]
    strict: bool,

    /// Worker threads for the sweep workflows (0 = one per core).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn dispatch(workflow: Workflow, cfg: &config::RunConfig) -> Result<WorkflowOutput, CliError> {
    match workflow {
        Workflow::Effective => workflows::run_effective(cfg),
        Workflow::Audit => workflows::run_audit(cfg),
        Workflow::ValidateBond => workflows::run_validate_bond(cfg),
        Workflow::ValidateAtom => workflows::run_validate_atom(cfg),
        Workflow::KitaevEd => workflows::run_kitaev_ed(cfg),
        Workflow::PhaseScan => workflows::run_phase_scan(cfg),
        Workflow::Feasibility => workflows::run_feasibility(cfg),
    }
}

fn run(cli: &Cli) -> Result<PathBuf, CliError> {
    let started = Instant::now();
    let bytes = std::fs::read(&cli.config)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", cli.config.display())))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::Config(format!("{} is not valid UTF-8", cli.config.display())))?;
    let input_sha256 = sha256_hex(text.as_bytes());
    let cfg = config::load(&text, cli.strict)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| CliError::Runtime(format!("cannot build the thread pool: {e}")))?;
    let output = pool.install(|| dispatch(cli.workflow, &cfg))?;

    for warning in &output.warnings {
        eprintln!("warning: {warning}");
    }

    let envelope = json!({
        "workflow": cli.workflow.name(),
        "input_sha256": input_sha256,
        "results": output.results,
        "conditions": output.conditions.unwrap_or(Value::Null),
        "warnings": Value::Array(
            output.warnings.iter().cloned().map(Value::String).collect()
        ),
    });

    let format = cli.format.unwrap_or_else(|| cli.workflow.default_format());
    let (file_name, contents) = match format {
        Format::Json => (format!("{}.json", cli.workflow.name()), render_json(&envelope)),
        Format::Csv => {
            let table = match output.table {
                Some(table) => table,
                None => flatten(&envelope),
            };
            (format!("{}.csv", cli.workflow.name()), render_csv(&table)?)
        }
    };
    let path = write_report(&cli.out, &file_name, &contents)?;
    // Timing goes to stderr only: the report bytes must not depend on it.
    eprintln!(
        "{} finished in {:.3} s",
        cli.workflow.name(),
        started.elapsed().as_secs_f64()
    );
    Ok(path)
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(path) => {
            println!("{}", path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

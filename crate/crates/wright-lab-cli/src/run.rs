//! Configuration parsing (flags + optional JSON config file) and command
//! execution.
//!
//! Every value flag accepts either an inline comma list or the path of a
//! grid file (one value per line). A `--config file.json` provides defaults
//! whose keys mirror the flag names; explicit flags win.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use wright_lab::bounds::{
    self, run_claim_audit, sup_error, theorem1_bound, theorem1_delta, modulus_of_continuity,
    GridSpec, Verdict, DEFAULT_SUP_POINTS,
};
use wright_lab::corpus::corpus_function;
use wright_lab::operator::{
    apply_operator, central_moment, raw_moment_closed_form, raw_moment_series, OperatorConfig,
};
use wright_lab::special::{wright_phi, WrightParams, DEFAULT_TOL};
use wright_lab::summability::{
    astat_limit_estimate, voronovskaya_experiment, SequenceSpec, SummabilityMatrix,
    DEFAULT_CONSISTENCY_THRESHOLD,
};

use crate::output::{write_output, Field, OutputFormat, Table};

#[derive(Debug, Parser)]
#[command(
    name = "wright-lab",
    version,
    about = "Wright-operator laboratory: series evaluation, operator moments, claim audits"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Evaluate the Wright function with a certified truncation bound.
    EvalWright(EvalWrightArgs),
    /// Apply the operator to a registered function at one or more points.
    Apply(ApplyArgs),
    /// Raw and central moments, closed form and brute-force series.
    Moments(MomentsArgs),
    /// Run the claim audit over a parameter grid.
    Audit(AuditArgs),
    /// Sup-norm error versus the stated rate bound along an n schedule.
    RateTable(RateTableArgs),
    /// A-statistical density protocol for a registered sequence.
    Astat(AstatArgs),
    /// Scaled-error experiment with an empirical limit estimate.
    Voronovskaya(VoronovskayaArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// JSON file of defaults; keys mirror the long flag names.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file path (default: <command>.<format>).
    #[arg(long)]
    output: Option<String>,
    /// Output format: csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Truncation tolerance in (0, 1e-2].
    #[arg(long)]
    tol: Option<String>,
}

#[derive(Debug, Args)]
struct EvalWrightArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    rho: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    z: Option<String>,
}

#[derive(Debug, Args)]
struct ApplyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Corpus function label.
    #[arg(long)]
    function: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    /// Evaluation points (comma list or grid file).
    #[arg(long)]
    x: Option<String>,
}

#[derive(Debug, Args)]
struct MomentsArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    x: Option<String>,
}

#[derive(Debug, Args)]
struct AuditArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Beta grid (comma list or grid file); default 1.5,2,5.
    #[arg(long)]
    beta: Option<String>,
    /// n grid; default 10,100,1000.
    #[arg(long)]
    n: Option<String>,
    /// x grid; default 0,0.25,0.5,1,2,5.
    #[arg(long)]
    x: Option<String>,
    /// Interval endpoint for the sup-norm claims; default 2.
    #[arg(long)]
    b: Option<String>,
    /// Claim ids or family prefixes; default: every registered claim.
    #[arg(long)]
    claims: Option<String>,
}

#[derive(Debug, Args)]
struct RateTableArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    function: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    b: Option<String>,
    /// Operator indices (comma list or grid file).
    #[arg(long)]
    n: Option<String>,
    /// Points of the sup-error grid on [0, B].
    #[arg(long)]
    points: Option<String>,
}

#[derive(Debug, Args)]
struct AstatArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// cesaro1 or identity.
    #[arg(long)]
    matrix: Option<String>,
    /// Registered sequence: square-indicator, inv-k or const-one.
    #[arg(long)]
    sequence: Option<String>,
    /// Candidate limit L.
    #[arg(long)]
    limit: Option<String>,
    #[arg(long)]
    eps: Option<String>,
    /// Row schedule; default 100,1000,10000.
    #[arg(long = "j-schedule")]
    j_schedule: Option<String>,
    /// Consistency threshold for the trend window; default 0.05.
    #[arg(long)]
    threshold: Option<String>,
}

#[derive(Debug, Args)]
struct VoronovskayaArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    function: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    /// x grid; default 0.25,0.5,1,2.
    #[arg(long)]
    x: Option<String>,
    /// n schedule; default 100,1000,10000.
    #[arg(long)]
    n: Option<String>,
}

/// Fully validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: RunCommand,
    pub output: PathBuf,
    pub format: OutputFormat,
    pub tol: f64,
}

#[derive(Debug, Clone)]
pub enum RunCommand {
    EvalWright { rho: f64, beta: f64, z: f64 },
    Apply { function: String, n: u32, beta: f64, x: Vec<f64> },
    Moments { n: u32, beta: f64, x: Vec<f64> },
    Audit { grid: GridSpec, claims: Vec<String> },
    RateTable { function: String, beta: f64, b: f64, n: Vec<u32>, points: usize },
    Astat {
        matrix: String,
        sequence: String,
        limit: f64,
        eps: f64,
        j_schedule: Vec<u64>,
        threshold: f64,
    },
    Voronovskaya { function: String, beta: f64, x: Vec<f64>, n: Vec<u32> },
}

impl RunCommand {
    fn name(&self) -> &'static str {
        match self {
            Self::EvalWright { .. } => "eval-wright",
            Self::Apply { .. } => "apply",
            Self::Moments { .. } => "moments",
            Self::Audit { .. } => "audit",
            Self::RateTable { .. } => "rate-table",
            Self::Astat { .. } => "astat",
            Self::Voronovskaya { .. } => "voronovskaya",
        }
    }
}

/// Values from a JSON config file, keys mirroring flag names.
struct FileDefaults(Value);

impl FileDefaults {
    fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self(Value::Null)),
            Some(p) => {
                let text = fs::read_to_string(p)
                    .with_context(|| format!("reading config file {}", p.display()))?;
                let value: Value = serde_json::from_str(&text)
                    .with_context(|| format!("parsing config file {}", p.display()))?;
                if !value.is_object() {
                    bail!("config file {} must hold a JSON object", p.display());
                }
                Ok(Self(value))
            }
        }
    }

    /// Explicit flags override file values.
    fn merge(&self, flag: Option<String>, key: &str) -> Option<String> {
        flag.or_else(|| {
            self.0.get(key).map(|v| match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            })
        })
    }
}

fn required(value: Option<String>, flag: &str) -> Result<String> {
    value.ok_or_else(|| anyhow::anyhow!("missing required flag --{flag}"))
}

fn parse_scalar(value: &str, flag: &str) -> Result<f64> {
    value
        .trim()
        .parse::<f64>()
        .with_context(|| format!("invalid --{flag} '{value}': expected a number"))
}

/// Inline comma list, or a grid file with one value per line.
fn parse_f64_list(value: &str, flag: &str) -> Result<Vec<f64>> {
    let items = raw_items(value, flag)?;
    items
        .iter()
        .map(|s| {
            s.parse::<f64>()
                .with_context(|| format!("invalid --{flag} entry '{s}': expected a number"))
        })
        .collect()
}

fn parse_u32_list(value: &str, flag: &str) -> Result<Vec<u32>> {
    let items = raw_items(value, flag)?;
    items
        .iter()
        .map(|s| {
            s.parse::<u32>()
                .with_context(|| format!("invalid --{flag} entry '{s}': expected a positive integer"))
        })
        .collect()
}

fn parse_u64_list(value: &str, flag: &str) -> Result<Vec<u64>> {
    let items = raw_items(value, flag)?;
    items
        .iter()
        .map(|s| {
            s.parse::<u64>()
                .with_context(|| format!("invalid --{flag} entry '{s}': expected a positive integer"))
        })
        .collect()
}

fn raw_items(value: &str, flag: &str) -> Result<Vec<String>> {
    let path = Path::new(value);
    let text = if path.is_file() {
        fs::read_to_string(path)
            .with_context(|| format!("reading grid file {} for --{flag}", path.display()))?
    } else {
        value.replace(',', "\n")
    };
    let items: Vec<String> = text
        .lines()
        .map(str::trim)
        .filter(|s| !s.is_empty() && !s.starts_with('#'))
        .map(str::to_string)
        .collect();
    if items.is_empty() {
        bail!("--{flag} is empty");
    }
    Ok(items)
}

fn operator_beta(value: f64) -> Result<f64> {
    if !(value.is_finite() && value > 1.0) {
        bail!("invalid --beta {value}: operator commands require beta > 1");
    }
    Ok(value)
}

fn parse_tol(value: Option<String>) -> Result<f64> {
    match value {
        None => Ok(DEFAULT_TOL),
        Some(s) => {
            let tol = parse_scalar(&s, "tol")?;
            if !(tol > 0.0 && tol <= 1e-2) {
                bail!("invalid --tol {tol}: must lie in (0, 1e-2]");
            }
            Ok(tol)
        }
    }
}

/// Parses argv into a validated RunConfig (usage errors come back as Err).
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| anyhow::anyhow!("{e}"))?;
    build_config(cli.command)
}

/// Binary entry point: clap handles help/version/usage exits itself;
/// validation problems exit 2, evaluation or I/O failures exit 1.
pub fn cli_main() -> std::process::ExitCode {
    let cli = Cli::parse();
    let config = match build_config(cli.command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return std::process::ExitCode::from(2);
        }
    };
    match execute(&config) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::ExitCode::FAILURE
        }
    }
}

fn build_config(command: CliCommand) -> Result<RunConfig> {
    let (common, command) = match command {
        CliCommand::EvalWright(args) => {
            let defaults = FileDefaults::load(args.common.config.as_deref())?;
            let rho = parse_scalar(
                &defaults.merge(args.rho, "rho").unwrap_or_else(|| "1".into()),
                "rho",
            )?;
            let beta = parse_scalar(&required(defaults.merge(args.beta, "beta"), "beta")?, "beta")?;
            let z = parse_scalar(&required(defaults.merge(args.z, "z"), "z")?, "z")?;
            if WrightParams::new(rho, beta).is_err() {
                bail!("invalid --rho {rho} / --beta {beta}: both must be > 0");
            }
            ((args.common, defaults), RunCommand::EvalWright { rho, beta, z })
        }
        CliCommand::Apply(args) => {
            let defaults = FileDefaults::load(args.common.config.as_deref())?;
            let function = required(defaults.merge(args.function, "function"), "function")?;
            corpus_function(&function)?;
            let n = parse_u32_list(&required(defaults.merge(args.n, "n"), "n")?, "n")?;
            if n.len() != 1 {
                bail!("--n for apply takes a single value");
            }
            let beta =
                operator_beta(parse_scalar(&required(defaults.merge(args.beta, "beta"), "beta")?, "beta")?)?;
            let x = parse_f64_list(&required(defaults.merge(args.x, "x"), "x")?, "x")?;
            ((args.common, defaults), RunCommand::Apply { function, n: n[0], beta, x })
        }
        CliCommand::Moments(args) => {
            let defaults = FileDefaults::load(args.common.config.as_deref())?;
            let n = parse_u32_list(&required(defaults.merge(args.n, "n"), "n")?, "n")?;
            if n.len() != 1 {
                bail!("--n for moments takes a single value");
            }
            let beta =
                operator_beta(parse_scalar(&required(defaults.merge(args.beta, "beta"), "beta")?, "beta")?)?;
            let x = parse_f64_list(&required(defaults.merge(args.x, "x"), "x")?, "x")?;
            ((args.common, defaults), RunCommand::Moments { n: n[0], beta, x })
        }
        CliCommand::Audit(args) => {
            let defaults = FileDefaults::load(args.common.config.as_deref())?;
            let standard = GridSpec::standard();
            let beta = match defaults.merge(args.beta, "beta") {
                Some(s) => parse_f64_list(&s, "beta")?,
                None => standard.beta_values.clone(),
            };
            for &b in &beta {
                operator_beta(b)?;
            }
            let n = match defaults.merge(args.n, "n") {
                Some(s) => parse_u32_list(&s, "n")?,
                None => standard.n_values.clone(),
            };
            let x = match defaults.merge(args.x, "x") {
                Some(s) => parse_f64_list(&s, "x")?,
                None => standard.x_points.clone(),
            };
            let b = match defaults.merge(args.b, "b") {
                Some(s) => parse_scalar(&s, "b")?,
                None => standard.b,
            };
            let claims = match defaults.merge(args.claims, "claims") {
                Some(s) => raw_items(&s, "claims")?,
                None => bounds::registered_claims(),
            };
            let tol = parse_tol(defaults.merge(args.common.tol.clone(), "tol"))?;
            let grid = GridSpec::new(x, n, beta, b, tol).map_err(|e| anyhow::anyhow!("{e}"))?;
            ((args.common, defaults), RunCommand::Audit { grid, claims })
        }
        CliCommand::RateTable(args) => {
            let defaults = FileDefaults::load(args.common.config.as_deref())?;
            let function = required(defaults.merge(args.function, "function"), "function")?;
            corpus_function(&function)?;
            let beta =
                operator_beta(parse_scalar(&required(defaults.merge(args.beta, "beta"), "beta")?, "beta")?)?;
            let b = match defaults.merge(args.b, "b") {
                Some(s) => parse_scalar(&s, "b")?,
                None => 2.0,
            };
            if !(b > 0.0) {
                bail!("invalid --b {b}: must be > 0");
            }
            let n = parse_u32_list(&required(defaults.merge(args.n, "n"), "n")?, "n")?;
            let points = match defaults.merge(args.points, "points") {
                Some(s) => {
                    let p = s
                        .parse::<usize>()
                        .with_context(|| format!("invalid --points '{s}'"))?;
                    if p < 2 {
                        bail!("--points must be >= 2");
                    }
                    p
                }
                None => DEFAULT_SUP_POINTS,
            };
            ((args.common, defaults), RunCommand::RateTable { function, beta, b, n, points })
        }
        CliCommand::Astat(args) => {
            let defaults = FileDefaults::load(args.common.config.as_deref())?;
            let matrix = required(defaults.merge(args.matrix, "matrix"), "matrix")?;
            if matrix != "cesaro1" && matrix != "identity" {
                bail!("invalid --matrix '{matrix}': expected cesaro1 or identity");
            }
            let sequence = required(defaults.merge(args.sequence, "sequence"), "sequence")?;
            if !["square-indicator", "inv-k", "const-one"].contains(&sequence.as_str()) {
                bail!(
                    "invalid --sequence '{sequence}': expected square-indicator, inv-k or const-one"
                );
            }
            let limit = parse_scalar(&required(defaults.merge(args.limit, "limit"), "limit")?, "limit")?;
            let eps = parse_scalar(&required(defaults.merge(args.eps, "eps"), "eps")?, "eps")?;
            if !(eps > 0.0) {
                bail!("invalid --eps {eps}: must be > 0");
            }
            let j_schedule = match defaults.merge(args.j_schedule, "j-schedule") {
                Some(s) => parse_u64_list(&s, "j-schedule")?,
                None => vec![100, 1000, 10_000],
            };
            let threshold = match defaults.merge(args.threshold, "threshold") {
                Some(s) => parse_scalar(&s, "threshold")?,
                None => DEFAULT_CONSISTENCY_THRESHOLD,
            };
            (
                (args.common, defaults),
                RunCommand::Astat { matrix, sequence, limit, eps, j_schedule, threshold },
            )
        }
        CliCommand::Voronovskaya(args) => {
            let defaults = FileDefaults::load(args.common.config.as_deref())?;
            let function = required(defaults.merge(args.function, "function"), "function")?;
            let f = corpus_function(&function)?;
            if !f.has_second_derivative() {
                bail!("--function {function} has no second derivative on record");
            }
            let beta =
                operator_beta(parse_scalar(&required(defaults.merge(args.beta, "beta"), "beta")?, "beta")?)?;
            let x = match defaults.merge(args.x, "x") {
                Some(s) => parse_f64_list(&s, "x")?,
                None => wright_lab::summability::default_x_grid(),
            };
            let n = match defaults.merge(args.n, "n") {
                Some(s) => parse_u32_list(&s, "n")?,
                None => wright_lab::summability::default_n_schedule(),
            };
            ((args.common, defaults), RunCommand::Voronovskaya { function, beta, x, n })
        }
    };

    let (common, defaults) = common;
    let format = match defaults.merge(common.format.clone(), "format") {
        Some(s) => OutputFormat::parse(&s)?,
        None => OutputFormat::Csv,
    };
    let tol = parse_tol(defaults.merge(common.tol, "tol"))?;
    let output = defaults
        .merge(common.output, "output")
        .unwrap_or_else(|| format!("{}.{}", command.name(), format.extension()));
    Ok(RunConfig { command, output: PathBuf::from(output), format, tol })
}

/// Echo of the run parameters for the in-file meta object (deterministic;
/// timestamps live only in the sidecar).
fn meta_for(config: &RunConfig) -> Value {
    let params = match &config.command {
        RunCommand::EvalWright { rho, beta, z } => json!({"rho": rho, "beta": beta, "z": z}),
        RunCommand::Apply { function, n, beta, x } => {
            json!({"function": function, "n": n, "beta": beta, "x": x})
        }
        RunCommand::Moments { n, beta, x } => json!({"n": n, "beta": beta, "x": x}),
        RunCommand::Audit { grid, claims } => json!({
            "B": grid.b,
            "beta": grid.beta_values,
            "claims": claims,
            "n": grid.n_values,
            "x": grid.x_points,
        }),
        RunCommand::RateTable { function, beta, b, n, points } => {
            json!({"function": function, "beta": beta, "B": b, "n": n, "points": points})
        }
        RunCommand::Astat { matrix, sequence, limit, eps, j_schedule, threshold } => json!({
            "matrix": matrix,
            "sequence": sequence,
            "limit": limit,
            "eps": eps,
            "j-schedule": j_schedule,
            "threshold": threshold,
        }),
        RunCommand::Voronovskaya { function, beta, x, n } => {
            json!({"function": function, "beta": beta, "x": x, "n": n})
        }
    };
    json!({"command": config.command.name(), "params": params, "tol": config.tol})
}

fn registered_sequence(label: &str) -> SequenceSpec {
    match label {
        "square-indicator" => SequenceSpec::square_indicator(),
        "inv-k" => SequenceSpec::inv_k(),
        _ => SequenceSpec::constant(1.0),
    }
}

/// Executes the run and writes the output file plus its sidecar. Audit runs
/// additionally print a one-line verdict summary to stdout.
pub fn execute(config: &RunConfig) -> Result<()> {
    let table = match &config.command {
        RunCommand::EvalWright { rho, beta, z } => {
            let params = WrightParams::new(*rho, *beta).map_err(|e| anyhow::anyhow!("{e}"))?;
            let r = wright_phi(params, *z, config.tol).map_err(|e| anyhow::anyhow!("{e}"))?;
            let mut table = Table::new(vec![
                "rho", "beta", "z", "tol", "value", "tail_bound", "terms_used", "converged",
            ]);
            table.push(vec![
                Field::F64(*rho),
                Field::F64(*beta),
                Field::F64(*z),
                Field::F64(config.tol),
                Field::F64(r.value),
                Field::F64(r.tail_bound),
                Field::U64(r.terms_used as u64),
                Field::Bool(r.converged),
            ]);
            table
        }
        RunCommand::Apply { function, n, beta, x } => {
            let f = corpus_function(function)?;
            let op = OperatorConfig::new(*n, *beta, config.tol)?;
            let mut table = Table::new(vec!["function", "n", "beta", "x", "tol", "value"]);
            for &xi in x {
                let v = apply_operator(&op, &f, xi)?;
                table.push(vec![
                    Field::Str(function.clone()),
                    Field::U64(u64::from(*n)),
                    Field::F64(*beta),
                    Field::F64(xi),
                    Field::F64(config.tol),
                    Field::F64(v),
                ]);
            }
            table
        }
        RunCommand::Moments { n, beta, x } => {
            let op = OperatorConfig::new(*n, *beta, config.tol)?;
            let mut table = Table::new(vec!["kind", "order", "n", "beta", "x", "value"]);
            for &xi in x {
                for j in 0..=4usize {
                    let v = raw_moment_closed_form(&op, j, xi)?;
                    table.push(moment_row("raw_closed", j, *n, *beta, xi, v));
                }
                for j in 0..=4usize {
                    let v = raw_moment_series(&op, j, xi)?;
                    table.push(moment_row("raw_series", j, *n, *beta, xi, v));
                }
                for i in 1..=4usize {
                    let v = central_moment(&op, i, xi)?;
                    table.push(moment_row("central", i, *n, *beta, xi, v));
                }
            }
            table
        }
        RunCommand::Audit { grid, claims } => {
            let records = run_claim_audit(grid, claims)?;
            let holds = records.iter().filter(|r| r.verdict == Verdict::Holds).count();
            let violated = records.iter().filter(|r| r.verdict == Verdict::Violated).count();
            let inconclusive =
                records.iter().filter(|r| r.verdict == Verdict::Inconclusive).count();
            println!(
                "audit: {} records | holds={holds} violated={violated} inconclusive={inconclusive}",
                records.len()
            );
            let mut table = Table::new(vec![
                "claim_id", "n", "beta", "x", "B", "measured", "stated", "margin", "verdict",
            ]);
            for r in &records {
                table.push(vec![
                    Field::Str(r.claim_id.clone()),
                    Field::opt_u32(r.n),
                    Field::F64(r.beta),
                    Field::opt_f64(r.x),
                    Field::opt_f64(r.b),
                    Field::F64(r.measured),
                    Field::F64(r.stated),
                    Field::F64(r.margin),
                    Field::Str(r.verdict.to_string()),
                ]);
            }
            table
        }
        RunCommand::RateTable { function, beta, b, n, points } => {
            let f = corpus_function(function)?;
            let mut table = Table::new(vec![
                "function", "n", "beta", "B", "sup_error", "delta_n", "modulus", "bound",
            ]);
            for &ni in n {
                let op = OperatorConfig::new(ni, *beta, config.tol)?;
                let err = sup_error(&f, &op, *b, *points)?;
                let delta = theorem1_delta(&op, *b);
                let omega = modulus_of_continuity(
                    &f,
                    *b + 1.0,
                    delta.sqrt().min(*b + 1.0),
                    bounds::DEFAULT_MODULUS_POINTS,
                )?;
                let bound = theorem1_bound(&f, &op, *b)?;
                table.push(vec![
                    Field::Str(function.clone()),
                    Field::U64(u64::from(ni)),
                    Field::F64(*beta),
                    Field::F64(*b),
                    Field::F64(err),
                    Field::F64(delta),
                    Field::F64(omega),
                    Field::F64(bound),
                ]);
            }
            table
        }
        RunCommand::Astat { matrix, sequence, limit, eps, j_schedule, threshold } => {
            let a = if matrix == "cesaro1" {
                SummabilityMatrix::Cesaro1
            } else {
                SummabilityMatrix::Identity
            };
            let s = registered_sequence(sequence);
            let report = astat_limit_estimate(&a, &s, *limit, *eps, j_schedule, *threshold)?;
            println!("astat: verdict {}", report.verdict);
            let mut table = Table::new(vec![
                "matrix", "sequence", "limit", "eps", "j", "density", "verdict",
            ]);
            for &(j, d) in &report.densities {
                table.push(vec![
                    Field::Str(matrix.clone()),
                    Field::Str(sequence.clone()),
                    Field::F64(*limit),
                    Field::F64(*eps),
                    Field::U64(j),
                    Field::F64(d),
                    Field::Str(report.verdict.to_string()),
                ]);
            }
            table
        }
        RunCommand::Voronovskaya { function, beta, x, n } => {
            let f = corpus_function(function)?;
            let report = voronovskaya_experiment(&f, *beta, x, n)?;
            let mut table = Table::new(vec![
                "function",
                "beta",
                "x",
                "n",
                "scaled_error",
                "empirical_limit",
                "claimed_constant",
                "claimed_rhs",
            ]);
            for row in &report.rows {
                let empirical = report
                    .empirical_limits
                    .iter()
                    .find(|(xe, _)| *xe == row.x)
                    .map(|&(_, v)| v)
                    .expect("every x has a limit estimate");
                table.push(vec![
                    Field::Str(function.clone()),
                    Field::F64(*beta),
                    Field::F64(row.x),
                    Field::U64(u64::from(row.n)),
                    Field::F64(row.scaled_error),
                    Field::F64(empirical),
                    Field::F64(row.claimed_constant),
                    Field::F64(row.claimed_rhs),
                ]);
            }
            table
        }
    };

    write_output(&config.output, config.format, &table, &meta_for(config))
}

fn moment_row(kind: &str, order: usize, n: u32, beta: f64, x: f64, value: f64) -> Vec<Field> {
    vec![
        Field::Str(kind.to_string()),
        Field::U64(order as u64),
        Field::U64(u64::from(n)),
        Field::F64(beta),
        Field::F64(x),
        Field::F64(value),
    ]
}

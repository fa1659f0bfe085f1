//! Command-line front end: reads problem files, dispatches to
//! `monopole-core` and renders deterministic JSON or table reports.
//!
//! Exit codes: 0 on success, 1 when a checked property fails (the report
//! carries the counterexample), 2 on invalid input or usage.

pub mod error;
pub mod input;
pub mod table;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monopole_core::checks::{self, KaehlerPart, KaehlerSuiteConfig, MuPart, MuSuiteConfig};
use monopole_core::cohomology::{self, BundleData, DEFAULT_DIRAC_MULTIPLICITY};
use monopole_core::kaehler;
use monopole_core::mu_kernel::{self, POSITIVITY_FLOOR};
use monopole_core::optim::MultistartConfig;
use monopole_core::reductions::{self, CurvatureBounds};
use monopole_core::{Error as CoreError, Warning};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::input::{BoundsInput, Metric, Problem, ProblemFile};

pub const TOOL: &str = "monopole";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = TOOL, version, about = "Index arithmetic, reduction enumeration and mu-map checks for PU(N) monopoles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Add wall-clock timing to the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expected dimensions of moduli spaces.
    Dim {
        #[command(subcommand)]
        kind: DimKind,
    },
    /// Fixed-point components of the circle action.
    Reductions {
        #[command(subcommand)]
        action: ReductionsCommand,
    },
    /// Ideal-monopole strata with lowered c2.
    Strata(StrataArgs),
    /// The quadratic map mu.
    Mu {
        #[command(subcommand)]
        action: MuCommand,
    },
    /// Pointwise Kähler algebra.
    Kaehler {
        #[command(subcommand)]
        action: KaehlerCommand,
    },
    /// Generic vanishing of reducible solutions at tau = 0.
    Tau0(InputArgs),
    /// Print the JSON schema of problem files.
    Schema,
}

#[derive(Subcommand, Debug)]
enum DimKind {
    /// PU(N) monopoles.
    Pun(DimArgs),
    /// U(n) monopoles.
    Un(DimArgs),
    /// Projectively anti-self-dual connections.
    Asd(InputArgs),
}

#[derive(Subcommand, Debug)]
enum ReductionsCommand {
    Enumerate(EnumerateArgs),
}

#[derive(Subcommand, Debug)]
enum MuCommand {
    /// Estimate min |mu(tau, psi)| over unit psi.
    Properness(MuOptArgs),
    /// Estimate min |mu(tau, psi, phi)| over unit psi, phi.
    ZeroDivisor(MuOptArgs),
    /// Randomized identity suite.
    Check(MuCheckArgs),
}

#[derive(Subcommand, Debug)]
enum KaehlerCommand {
    /// Randomized pointwise suite.
    Check(KaehlerCheckArgs),
    /// Estimate min ||{beta alpha^*}_tau - lambda id||.
    Margin(MarginArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Problem file (JSON).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct DimArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Multiplicity of the Dirac index term.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..=2))]
    dirac_multiplicity: Option<i64>,
}

#[derive(Args, Debug)]
struct StrataArgs {
    #[command(flatten)]
    dim: DimArgs,
    #[arg(long)]
    kmax: Option<u32>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    strata: StrataArgs,
    #[arg(long)]
    c_trace: Option<f64>,
    #[arg(long)]
    c_plus: Option<f64>,
    #[arg(long)]
    c_minus: Option<f64>,
    /// "identity" or a JSON matrix of rationals.
    #[arg(long)]
    g: Option<Metric>,
}

#[derive(Args, Debug, Clone)]
struct OptimArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    starts: Option<usize>,
    /// Gradient-norm tolerance of each local descent.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iterations: Option<usize>,
    /// Positivity floor a margin has to clear.
    #[arg(long)]
    floor: Option<f64>,
}

impl OptimArgs {
    fn config(&self, default_starts: usize) -> MultistartConfig {
        let d = MultistartConfig::default();
        MultistartConfig {
            starts: self.starts.unwrap_or(default_starts),
            seed: self.seed.unwrap_or(0),
            max_iterations: self.max_iterations.unwrap_or(d.max_iterations),
            gradient_tolerance: self.tol.unwrap_or(d.gradient_tolerance),
        }
    }
}

#[derive(Args, Debug)]
struct MuOptArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    tau: f64,
    #[command(flatten)]
    optim: OptimArgs,
}

#[derive(Args, Debug)]
struct MuCheckArgs {
    /// all, quartic, block, orthogonality, hermiticity, monotonicity,
    /// equivariance, phase or zero-divisor
    #[arg(long, default_value = "all")]
    suite: String,
    /// Samples per (check, n, tau); the zero-divisor checks use ten times as many.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct KaehlerCheckArgs {
    /// all, mu, split, decoupling or impossibility
    #[arg(long, default_value = "all")]
    suite: String,
    /// Samples per (check, n, tau); the decoupling check draws 100 times as
    /// many in total.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[command(flatten)]
    optim: OptimArgs,
}

#[derive(Args, Debug)]
struct MarginArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_negative_numbers = true)]
    tau: f64,
    /// Complex number such as 1, 2i or 1+0.5i.
    #[arg(long, allow_negative_numbers = true)]
    lambda: String,
    #[command(flatten)]
    optim: OptimArgs,
}

/// Exit code and the text written to standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// What a command produced before it is wrapped into a report.
struct Produced {
    result: Value,
    warnings: Vec<Warning>,
    input: Option<ProblemFile>,
    property_failed: bool,
}

#[derive(Serialize)]
struct WarningRecord<'a> {
    #[serde(flatten)]
    warning: &'a Warning,
    message: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    if let Command::Schema = cli.command {
        return Outcome { code: 0, stdout: input::SCHEMA.to_string(), stderr: String::new() };
    }
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let started = Instant::now();
    match dispatch(&cli.command) {
        Ok(p) => {
            let report = build_report(&echo, p.input.as_ref(), p.result, &p.warnings, cli.timing.then(|| started.elapsed().as_secs_f64()));
            let code = if p.property_failed { 1 } else { 0 };
            let stderr = if p.property_failed { "property check failed; see report\n".to_string() } else { String::new() };
            Outcome { code, stdout: render(&report, cli.format), stderr }
        }
        Err(e) => {
            let report = json!({ "tool": TOOL, "version": VERSION, "command": echo, "error": e.record() });
            Outcome { code: e.exit_code(), stdout: render(&report, cli.format), stderr: format!("error: {e}\n") }
        }
    }
}

fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = String::new();
            pretty(report, 0, &mut s);
            s.push('\n');
            s
        }
        Format::Table => table::render(report),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

/// Indented JSON with arrays of scalars on one line.
fn pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = |k: usize| "  ".repeat(k);
    match v {
        Value::Array(a) if a.is_empty() => out.push_str("[]"),
        Value::Array(a) if a.iter().all(is_scalar) => {
            out.push('[');
            out.push_str(&a.iter().map(Value::to_string).collect::<Vec<_>>().join(", "));
            out.push(']');
        }
        Value::Array(a) if a.iter().all(|r| matches!(r, Value::Array(x) if x.iter().all(is_scalar))) => {
            out.push_str("[\n");
            for (i, row) in a.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                pretty(row, indent + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, item) in a.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                pretty(item, indent + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, item)) in m.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                pretty(item, indent + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

fn build_report(echo: &[String], input: Option<&ProblemFile>, result: Value, warnings: &[Warning], timing: Option<f64>) -> Value {
    let (input_value, hash) = match input {
        Some(p) => {
            let canonical = p.canonical();
            (serde_json::to_value(p).expect("input serializes"), Value::String(hex::encode(Sha256::digest(canonical.as_bytes()))))
        }
        None => (Value::Null, Value::Null),
    };
    let warnings: Vec<WarningRecord> = warnings.iter().map(|w| WarningRecord { warning: w, message: w.to_string() }).collect();
    let mut report = json!({
        "tool": TOOL,
        "version": VERSION,
        "command": echo,
        "input": input_value,
        "input_sha256": hash,
        "result": result,
        "warnings": warnings,
    });
    if let Some(t) = timing {
        report["timing"] = json!({ "wall_seconds": t });
    }
    report
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn load(args: &InputArgs) -> Result<Problem, CliError> {
    let path = args.input.display().to_string();
    let text = std::fs::read_to_string(&args.input).map_err(|e| CliError::Io { path, message: e.to_string() })?;
    ProblemFile::parse(&text)?.validate()
}

fn input_warnings(p: &Problem) -> Result<Vec<Warning>, CliError> {
    let mut w = p.manifold.warnings();
    w.extend(p.spinc.warnings(&p.manifold).map_err(CliError::from_core)?);
    Ok(w)
}

/// Core errors without a field of their own, attributed to the input.
fn topology_error(e: CoreError) -> CliError {
    match e {
        CoreError::Precondition(_) => CliError::from_core_at(e, "bundle.rank"),
        _ => CliError::from_core_at(e, "spinc.c1"),
    }
}

fn multiplicity(flag: Option<i64>, p: &Problem) -> i64 {
    flag.or(p.raw.options.as_ref().and_then(|o| o.dirac_multiplicity)).unwrap_or(DEFAULT_DIRAC_MULTIPLICITY)
}

fn kmax(flag: Option<u32>, p: &Problem) -> u32 {
    flag.or(p.raw.options.as_ref().and_then(|o| o.kmax)).unwrap_or(0)
}

fn manifold_summary(p: &Problem) -> Value {
    let m = &p.manifold;
    json!({
        "name": m.name(),
        "b1": m.b1(),
        "b2": m.b2(),
        "b2plus": m.b2plus(),
        "signature": m.signature(),
        "euler": m.euler(),
        "determinant": m.determinant().to_string(),
        "unimodular": m.is_unimodular(),
    })
}

fn from_input(p: Problem, result: Value, mut warnings: Vec<Warning>) -> Result<Produced, CliError> {
    let mut all = input_warnings(&p)?;
    all.append(&mut warnings);
    Ok(Produced { result, warnings: all, input: Some(p.raw), property_failed: false })
}

fn dispatch(cmd: &Command) -> Result<Produced, CliError> {
    match cmd {
        Command::Dim { kind } => dim(kind),
        Command::Reductions { action: ReductionsCommand::Enumerate(a) } => enumerate(a),
        Command::Strata(a) => strata(a),
        Command::Mu { action } => mu(action),
        Command::Kaehler { action } => kaehler_cmd(action),
        Command::Tau0(a) => {
            let p = load(a)?;
            let v = reductions::generic_tau0_vanishing(&p.manifold);
            let result = json!({ "b2plus": p.manifold.b2plus(), "vanishes_generically": v.vanishes_generically, "cokernel_dimension": v.cokernel_dimension });
            from_input(p, result, Vec::new())
        }
        Command::Schema => unreachable!("handled before dispatch"),
    }
}

fn dim(kind: &DimKind) -> Result<Produced, CliError> {
    let (p, breakdown) = match kind {
        DimKind::Pun(a) => {
            let p = load(&a.input)?;
            let mult = multiplicity(a.dirac_multiplicity, &p);
            let b = cohomology::expected_dim_pun_breakdown(&p.bundle, &p.spinc, &p.manifold, mult).map_err(topology_error)?;
            (p, b)
        }
        DimKind::Un(a) => {
            let p = load(&a.input)?;
            let mult = multiplicity(a.dirac_multiplicity, &p);
            let b = cohomology::expected_dim_un_breakdown(&p.bundle, &p.spinc, &p.manifold, mult).map_err(topology_error)?;
            (p, b)
        }
        DimKind::Asd(a) => {
            let p = load(a)?;
            let b = cohomology::expected_dim_asd_breakdown(&p.bundle, &p.manifold).map_err(topology_error)?;
            (p, b)
        }
    };
    let mut result = to_value(&breakdown);
    result["manifold"] = manifold_summary(&p);
    from_input(p, result, Vec::new())
}

fn bounds(a: &EnumerateArgs, p: &Problem) -> Result<CurvatureBounds, CliError> {
    let any_flag = a.c_trace.is_some() || a.c_plus.is_some() || a.c_minus.is_some() || a.g.is_some();
    let base = match (&p.raw.bounds, any_flag) {
        (Some(b), _) => b.clone(),
        (None, true) => BoundsInput { c_trace: 0.0, c_plus: 0.0, c_minus: 0.0, g: Metric::Identity },
        (None, false) => {
            return Err(CliError::Validation {
                field: "bounds".into(),
                message: "curvature bounds are required (in the problem file or via --c-trace/--c-plus/--c-minus/--g)".into(),
            })
        }
    };
    let merged = BoundsInput {
        c_trace: a.c_trace.unwrap_or(base.c_trace),
        c_plus: a.c_plus.unwrap_or(base.c_plus),
        c_minus: a.c_minus.unwrap_or(base.c_minus),
        g: a.g.clone().unwrap_or(base.g),
    };
    merged.to_core(p.manifold.b2())
}

fn enumerate(a: &EnumerateArgs) -> Result<Produced, CliError> {
    let p = load(&a.strata.dim.input)?;
    let mult = multiplicity(a.strata.dim.dirac_multiplicity, &p);
    let k = kmax(a.strata.kmax, &p);
    let b = bounds(a, &p)?;
    let r = reductions::enumerate_reductions(&p.manifold, &p.bundle, &p.spinc, &b, k, mult).map_err(topology_error)?;
    let result = json!({
        "bounds": to_value(&b),
        "kmax": k,
        "dirac_multiplicity": mult,
        "c1_radius_sq": b.c1_radius_sq(),
        "lattice_points": r.lattice_points,
        "pruned_inconsistent": r.pruned_inconsistent,
        "candidate_count": r.candidates.len(),
        "candidates": to_value(&r.candidates),
    });
    from_input(p, result, r.warnings)
}

#[derive(Serialize)]
struct StratumRow<'a> {
    k: u32,
    bundle: &'a BundleData,
    expected_dim_pun: i64,
    dimension_drop: i64,
}

fn strata(a: &StrataArgs) -> Result<Produced, CliError> {
    let p = load(&a.dim.input)?;
    let mult = multiplicity(a.dim.dirac_multiplicity, &p);
    let k = kmax(a.kmax, &p);
    let s = reductions::uhlenbeck_strata(&p.bundle, &p.manifold, &p.spinc, k, mult).map_err(topology_error)?;
    let top = s[0].expected_dim_pun;
    let rows: Vec<StratumRow> = s
        .iter()
        .map(|st| StratumRow { k: st.k, bundle: &st.bundle, expected_dim_pun: st.expected_dim_pun, dimension_drop: top - st.expected_dim_pun })
        .collect();
    let result = json!({ "kmax": k, "dirac_multiplicity": mult, "strata": to_value(&rows) });
    from_input(p, result, Vec::new())
}

fn field_error(field: &str) -> impl Fn(CoreError) -> CliError + '_ {
    move |e| CliError::from_core_at(e, field)
}

fn mu(cmd: &MuCommand) -> Result<Produced, CliError> {
    match cmd {
        MuCommand::Properness(a) | MuCommand::ZeroDivisor(a) => {
            let cfg = a.optim.config(MultistartConfig::default().starts);
            let floor = a.optim.floor.unwrap_or(POSITIVITY_FLOOR);
            let r = if matches!(cmd, MuCommand::Properness(_)) {
                mu_kernel::properness_constant_estimate(a.n, a.tau, &cfg, floor)
            } else {
                mu_kernel::zero_divisor_margin(a.n, a.tau, &cfg, floor)
            }
            .map_err(field_error("--n"))?;
            Ok(Produced {
                property_failed: r.success == Some(false),
                warnings: r.warnings.clone(),
                result: to_value(&r),
                input: None,
            })
        }
        MuCommand::Check(a) => {
            let part: MuPart = a.suite.parse().map_err(|m| CliError::Validation { field: "--suite".into(), message: m })?;
            let cfg = MuSuiteConfig { seed: a.seed, samples: a.samples, zero_divisor_samples: a.samples * 10, ..Default::default() };
            let r = checks::mu_suite(&cfg, part);
            Ok(Produced { property_failed: !r.passed, warnings: Vec::new(), result: to_value(&r), input: None })
        }
    }
}

fn parse_lambda(s: &str) -> Result<Complex64, CliError> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    cleaned.parse::<Complex64>().map_err(|_| CliError::Validation {
        field: "--lambda".into(),
        message: format!("not a complex number: {s:?} (examples: 1, 2i, 1+0.5i)"),
    })
}

fn kaehler_cmd(cmd: &KaehlerCommand) -> Result<Produced, CliError> {
    match cmd {
        KaehlerCommand::Check(a) => {
            let part: KaehlerPart = a.suite.parse().map_err(|m| CliError::Validation { field: "--suite".into(), message: m })?;
            let cfg = KaehlerSuiteConfig {
                seed: a.optim.seed.unwrap_or(0),
                samples: a.samples,
                decoupling_samples: (a.samples * 100).div_ceil(6),
                multistart: a.optim.config(KaehlerSuiteConfig::default().multistart.starts),
                ..Default::default()
            };
            let r = checks::kaehler_suite(&cfg, part).map_err(field_error("--suite"))?;
            Ok(Produced { property_failed: !r.passed, warnings: Vec::new(), result: to_value(&r), input: None })
        }
        KaehlerCommand::Margin(a) => {
            let lambda = parse_lambda(&a.lambda)?;
            let cfg = a.optim.config(MultistartConfig::default().starts);
            let floor = a.optim.floor.unwrap_or(POSITIVITY_FLOOR);
            let r = kaehler::impossibility_margin(a.n, a.tau, lambda, &cfg, floor).map_err(field_error("--n/--tau"))?;
            Ok(Produced {
                property_failed: r.optimization.success == Some(false),
                warnings: r.optimization.warnings.clone(),
                result: to_value(&r),
                input: None,
            })
        }
    }
}

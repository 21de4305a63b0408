//! Command-line front end: `check`, `solve`, `hjb-grid`, `simulate` and
//! `sweep` over a JSON problem file.
//!
//! Structured results are JSON, grids and sweeps are CSV with `#`-prefixed
//! comment lines. Every output embeds a [`RunManifest`]; the timestamped
//! copy is only written as a sidecar file next to `--out` so that stdout is
//! a pure function of the inputs.
//!
//! Exit codes: 0 success, 1 usage error, 2 assumption failure, 3 config
//! parse failure, 4 solver failure, 5 simulation failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::generator::{hjb_residual, GeneratorError};
use crate::model::{BanditProblem, InformationModel, ModelError, ValidProblem, ValidationReport};
use crate::simulator::{self, EstimatorKind, SimConfig, SimError, SimResult, Strategy};
use crate::solver::{self, Solution, SolverError, SweepParameter, DEFAULT_TOL};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_ASSUMPTION: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_SOLVER: i32 = 4;
pub const EXIT_SIMULATION: i32 = 5;

/// Largest admissible `|residual|` on the active branch of the HJB grid.
pub const HJB_ACTIVE_TOL: f64 = 1e-8;
/// Largest admissible residual for the non-optimal control.
pub const HJB_INACTIVE_TOL: f64 = 1e-12;
/// Half-width of the window around the cut-off excluded from HJB grids.
pub const HJB_BOUNDARY_GAP: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: invalid config at `{field}`: {message}", path.display())]
    Parse { path: PathBuf, field: String, message: String },
    #[error("assumptions violated:\n{0}")]
    Assumptions(ValidationReport),
    #[error("{0}")]
    Solver(SolverError),
    #[error("{0}")]
    Generator(#[from] GeneratorError),
    #[error("HJB certification failed: {0}")]
    Certification(String),
    #[error("{0}")]
    Simulation(SimError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => EXIT_CONFIG,
            CliError::Assumptions(_) => EXIT_ASSUMPTION,
            CliError::Solver(SolverError::Model(_)) => EXIT_ASSUMPTION,
            CliError::Solver(SolverError::InvalidGridPoint { source, .. })
                if matches!(**source, SolverError::Model(_)) =>
            {
                EXIT_ASSUMPTION
            }
            CliError::Solver(_) | CliError::Generator(_) | CliError::Certification(_) => EXIT_SOLVER,
            CliError::Simulation(SimError::InvalidStrategy(_)) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Simulation(_) | CliError::Write { .. } => EXIT_SIMULATION,
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Model(ModelError::Invalid(report)) => CliError::Assumptions(report),
            other => CliError::Solver(other),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        CliError::Simulation(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "levy-bandit", version, about = "Two-armed Lévy bandit: closed-form solution, HJB certification, Monte Carlo")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a problem file against the model assumptions
    Check(CheckArgs),
    /// Compute the root, cut-off and option coefficient
    Solve(SolveArgs),
    /// Evaluate the HJB residual of the solved value on a belief grid
    HjbGrid(HjbGridArgs),
    /// Monte Carlo estimate of a strategy's discounted payoff
    Simulate(SimulateArgs),
    /// Re-solve over a parameter grid
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    pub config: PathBuf,
    /// Print the report as JSON instead of text
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct PayoffArgs {
    /// Expected flow payoff of the High type (defaults to its mean)
    #[arg(long, allow_hyphen_values = true)]
    pub g1: Option<f64>,
    /// Expected flow payoff of the Low type (defaults to its mean)
    #[arg(long, allow_hyphen_values = true)]
    pub g0: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    pub config: PathBuf,
    #[command(flatten)]
    pub payoffs: PayoffArgs,
    /// Append an N-point table of the value function on [0, 1]
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct HjbGridArgs {
    pub config: PathBuf,
    #[command(flatten)]
    pub payoffs: PayoffArgs,
    #[arg(long, default_value_t = 1000)]
    pub points: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    pub config: PathBuf,
    /// cutoff:P, optimal, always-risky, always-safe, constant:K or table:U1=K1,...
    #[arg(long, default_value = "optimal")]
    pub strategy: String,
    #[arg(long, default_value_t = 0.5)]
    pub p0: f64,
    #[arg(long, default_value_t = simulator::DEFAULT_PATHS)]
    pub paths: usize,
    #[arg(long, default_value_t = simulator::DEFAULT_DT)]
    pub dt: f64,
    /// Defaults to the horizon with e^{-rT} = 1e-3
    #[arg(long)]
    pub horizon: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// payoff, belief or both
    #[arg(long, default_value = "both")]
    pub estimator: String,
    /// Worker threads (defaults to all cores)
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write per-path outcomes to this CSV file
    #[arg(long)]
    pub per_path: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    pub config: PathBuf,
    /// r, sigma, rho or jump-scale
    #[arg(long)]
    pub param: String,
    #[arg(long, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: f64,
    /// Number of grid points
    #[arg(long)]
    pub steps: usize,
    /// Belief at which the value is reported
    #[arg(long, default_value_t = 0.5)]
    pub probe: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Provenance embedded in every output.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunManifest {
    pub command: String,
    pub config_path: String,
    pub parameters: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tool_version: String,
    /// Seconds since the Unix epoch; only set in sidecar files.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl RunManifest {
    fn new(command: &str, config: &Path, parameters: Value, seed: Option<u64>) -> Self {
        RunManifest {
            command: command.to_string(),
            config_path: config.display().to_string(),
            parameters,
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: None,
        }
    }

    fn stamped(&self) -> Self {
        let now = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        RunManifest { timestamp: Some(now), ..self.clone() }
    }
}

/// What a command prints and how it exits.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub stdout: String,
    pub code: i32,
    pub manifest: RunManifest,
}

/// Reads and deserializes a problem file, reporting the failing field path.
pub fn load_problem(path: &Path) -> Result<BanditProblem, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        field: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

fn num(x: f64) -> String {
    format!("{x:?}")
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn manifest_comment(m: &RunManifest) -> String {
    format!("# manifest: {}\n", serde_json::to_string(m).expect("serializable manifest"))
}

pub fn cmd_check(args: &CheckArgs) -> Result<CommandOutput, CliError> {
    let problem = load_problem(&args.config)?;
    let report = problem.validate();
    let manifest = RunManifest::new("check", &args.config, json!({}), None);
    let stdout = if args.json {
        to_json(&json!({ "manifest": manifest, "ok": report.ok, "checks": report.checks }))
    } else {
        format!("{report}\n")
    };
    let code = if report.ok { EXIT_SUCCESS } else { EXIT_ASSUMPTION };
    Ok(CommandOutput { stdout, code, manifest })
}

/// Loads, validates and solves, reporting indistinguishable types before
/// the payoff ordering they necessarily violate.
fn load_solution(config: &Path, payoffs: &PayoffArgs) -> Result<Solution, CliError> {
    let problem = load_problem(config)?;
    let report = problem.validate();
    if !report.information_ok() {
        return Err(CliError::Assumptions(report));
    }
    let info = InformationModel::new(&problem).map_err(SolverError::from)?;
    if !info.has_signal() {
        return Err(CliError::Solver(SolverError::NoSignal));
    }
    let valid: ValidProblem = problem.validated().map_err(SolverError::from)?;
    let g1 = payoffs.g1.unwrap_or(valid.mu_high());
    let g0 = payoffs.g0.unwrap_or(valid.mu_low());
    Ok(solver::solve_general(&valid, g1, g0, payoffs.tol)?)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SolveOutput {
    manifest: RunManifest,
    #[serde(flatten)]
    solution: solver::SolutionSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    value_table: Option<Vec<[f64; 2]>>,
}

pub fn cmd_solve(args: &SolveArgs) -> Result<CommandOutput, CliError> {
    let sol = load_solution(&args.config, &args.payoffs)?;
    let manifest = RunManifest::new(
        "solve",
        &args.config,
        json!({ "g1": sol.g1, "g0": sol.g0, "tol": args.payoffs.tol, "grid": args.grid }),
        None,
    );
    let value_table = args.grid.map(|n| {
        belief_grid_closed(n)
            .into_iter()
            .map(|p| [p, sol.value(p).expect("grid inside [0, 1]")])
            .collect()
    });
    let out = SolveOutput { manifest: manifest.clone(), solution: sol.summary(), value_table };
    Ok(CommandOutput { stdout: to_json(&out), code: EXIT_SUCCESS, manifest })
}

/// `n` evenly spaced beliefs including both endpoints; one point is 0.5.
fn belief_grid_closed(n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![0.5],
        _ => (0..n).map(|i| i as f64 / (n - 1) as f64).collect(),
    }
}

/// Cell midpoints `(i + ½) / n`.
pub fn belief_grid_midpoints(n: usize) -> Vec<f64> {
    (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HjbRow {
    pub p: f64,
    pub residual_k0: f64,
    pub residual_k1: f64,
    /// Optimal control at `p`.
    pub experiment: bool,
}

impl HjbRow {
    pub fn active(&self) -> f64 {
        if self.experiment {
            self.residual_k1
        } else {
            self.residual_k0
        }
    }

    pub fn inactive(&self) -> f64 {
        if self.experiment {
            self.residual_k0
        } else {
            self.residual_k1
        }
    }
}

/// Residual rows on the given beliefs, skipping those within
/// [`HJB_BOUNDARY_GAP`] of the cut-off.
pub fn hjb_rows(sol: &Solution, beliefs: &[f64]) -> Result<Vec<HjbRow>, GeneratorError> {
    beliefs
        .iter()
        .filter(|&&p| (p - sol.p_star).abs() > HJB_BOUNDARY_GAP)
        .map(|&p| {
            Ok(HjbRow {
                p,
                residual_k0: hjb_residual(sol, p, 0.0)?,
                residual_k1: hjb_residual(sol, p, 1.0)?,
                experiment: p > sol.p_star,
            })
        })
        .collect()
}

pub fn cmd_hjb_grid(args: &HjbGridArgs) -> Result<CommandOutput, CliError> {
    if args.points == 0 {
        return Err(CliError::Usage("--points must be positive".into()));
    }
    let sol = load_solution(&args.config, &args.payoffs)?;
    let manifest = RunManifest::new(
        "hjb-grid",
        &args.config,
        json!({ "points": args.points, "g1": sol.g1, "g0": sol.g0, "tol": args.payoffs.tol }),
        None,
    );
    let rows = hjb_rows(&sol, &belief_grid_midpoints(args.points))?;
    let mut csv = manifest_comment(&manifest);
    writeln!(csv, "# pStar={}", num(sol.p_star)).unwrap();
    csv.push_str("p,residual_k0,residual_k1,branch\n");
    for row in &rows {
        let branch = if row.experiment { "experiment" } else { "stop" };
        writeln!(csv, "{},{},{},{branch}", num(row.p), num(row.residual_k0), num(row.residual_k1)).unwrap();
    }
    let max_active = rows.iter().map(|r| r.active().abs()).fold(0.0, f64::max);
    let max_inactive = rows.iter().map(|r| r.inactive()).fold(f64::NEG_INFINITY, f64::max);
    let certified = max_active <= HJB_ACTIVE_TOL && rows.iter().all(|r| r.inactive() <= HJB_INACTIVE_TOL);
    writeln!(csv, "# max_abs_active_residual={}", num(max_active)).unwrap();
    writeln!(csv, "# max_inactive_residual={}", num(max_inactive)).unwrap();
    writeln!(csv, "# certified={certified}").unwrap();
    if !certified {
        return Err(CliError::Certification(format!(
            "max active residual {max_active:e}, max inactive residual {max_inactive:e}\n{csv}"
        )));
    }
    Ok(CommandOutput { stdout: csv, code: EXIT_SUCCESS, manifest })
}

fn parse_strategy(text: &str, config: &Path) -> Result<Strategy, CliError> {
    if text == "optimal" {
        let sol = load_solution(config, &PayoffArgs { g1: None, g0: None, tol: DEFAULT_TOL })?;
        return Ok(Strategy::Cutoff(sol.p_star));
    }
    text.parse::<Strategy>().map_err(|e| CliError::Usage(e.to_string()))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SimulateOutput<'a> {
    manifest: RunManifest,
    strategy: &'a Strategy,
    config: &'a SimConfig,
    result: SimResult,
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<CommandOutput, CliError> {
    let problem = load_problem(&args.config)?;
    let valid = problem.validated().map_err(SolverError::from)?;
    let strategy = parse_strategy(&args.strategy, &args.config)?;
    let estimator: EstimatorKind = args.estimator.parse().map_err(|e: SimError| CliError::Usage(e.to_string()))?;
    let config = SimConfig {
        dt: args.dt,
        horizon: args.horizon.unwrap_or_else(|| simulator::default_horizon(valid.r())),
        paths: args.paths,
        seed: args.seed,
        estimator,
        p0: args.p0,
        workers: args.workers,
    };
    let outcomes = simulator::simulate_paths(&valid, &strategy, &config)?;
    let result = simulator::summarize(&valid, &config, &outcomes);
    if let Some(path) = &args.per_path {
        let mut csv = String::from("path,high,payoff,belief,final_belief\n");
        for (i, o) in outcomes.iter().enumerate() {
            writeln!(
                csv,
                "{i},{},{},{},{}",
                o.high as u8,
                num(o.payoff_estimate),
                num(o.belief_estimate),
                num(o.final_belief)
            )
            .unwrap();
        }
        fs::write(path, csv).map_err(|source| CliError::Write { path: path.clone(), source })?;
    }
    let manifest = RunManifest::new(
        "simulate",
        &args.config,
        json!({ "strategy": strategy.to_string(), "config": &config }),
        Some(args.seed),
    );
    let out = SimulateOutput { manifest: manifest.clone(), strategy: &strategy, config: &config, result };
    Ok(CommandOutput { stdout: to_json(&out), code: EXIT_SUCCESS, manifest })
}

/// `steps` evenly spaced points from `from` to `to`; a single step is `from`.
pub fn linear_grid(from: f64, to: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => vec![],
        1 => vec![from],
        _ => (0..steps)
            .map(|i| {
                if i + 1 == steps {
                    to
                } else {
                    from + (to - from) * i as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

fn trend(values: &[f64]) -> &'static str {
    let pairs = || values.windows(2);
    if pairs().all(|w| w[0] == w[1]) {
        "constant"
    } else if pairs().all(|w| w[0] < w[1]) {
        "increasing"
    } else if pairs().all(|w| w[0] > w[1]) {
        "decreasing"
    } else {
        "non-monotone"
    }
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<CommandOutput, CliError> {
    let parameter: SweepParameter = args.param.parse().map_err(CliError::Usage)?;
    if args.steps == 0 {
        return Err(CliError::Usage("--steps must be positive".into()));
    }
    let problem = load_problem(&args.config)?;
    let grid = linear_grid(args.from, args.to, args.steps);
    let rows = solver::sweep(&problem, parameter, &grid, args.probe, args.tol)?;
    let manifest = RunManifest::new(
        "sweep",
        &args.config,
        json!({ "param": parameter.name(), "from": args.from, "to": args.to, "steps": args.steps, "probe": args.probe, "tol": args.tol }),
        None,
    );
    let mut csv = manifest_comment(&manifest);
    writeln!(csv, "# parameter={}", parameter.name()).unwrap();
    csv.push_str("param,alphaStar,pStar,pMyopic\n");
    for r in &rows {
        writeln!(csv, "{},{},{},{}", num(r.parameter), num(r.alpha_star), num(r.p_star), num(r.p_myopic)).unwrap();
    }
    writeln!(
        csv,
        "# monotonicity: alphaStar={} pStar={} pStarBelowMyopic={}",
        trend(&rows.iter().map(|r| r.alpha_star).collect::<Vec<_>>()),
        trend(&rows.iter().map(|r| r.p_star).collect::<Vec<_>>()),
        solver::monotonicity(&rows).below_myopic
    )
    .unwrap();
    Ok(CommandOutput { stdout: csv, code: EXIT_SUCCESS, manifest })
}

fn out_path(command: &Command) -> Option<&Path> {
    match command {
        Command::Check(_) => None,
        Command::Solve(a) => a.out.as_deref(),
        Command::HjbGrid(a) => a.out.as_deref(),
        Command::Simulate(a) => a.out.as_deref(),
        Command::Sweep(a) => a.out.as_deref(),
    }
}

/// Runs one parsed command.
pub fn execute(command: &Command) -> Result<CommandOutput, CliError> {
    let output = match command {
        Command::Check(a) => cmd_check(a),
        Command::Solve(a) => cmd_solve(a),
        Command::HjbGrid(a) => cmd_hjb_grid(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Sweep(a) => cmd_sweep(a),
    }?;
    if let Some(path) = out_path(command) {
        let write = |p: &Path, text: &str| {
            fs::write(p, text).map_err(|source| CliError::Write { path: p.to_path_buf(), source })
        };
        write(path, &output.stdout)?;
        let mut sidecar = path.as_os_str().to_owned();
        sidecar.push(".manifest.json");
        write(Path::new(&sidecar), &to_json(&output.manifest.stamped()))?;
    }
    Ok(output)
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if informational {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return if informational { EXIT_SUCCESS } else { EXIT_USAGE };
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if matches!(e, CliError::Solver(SolverError::NoSignal)) {
                let _ = writeln!(
                    stderr,
                    "hint: the high and low hypotheses generate the same observations; make the drifts or jump rates differ"
                );
            }
            e.exit_code()
        }
    }
}

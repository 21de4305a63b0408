//! Monte Carlo engine for stationary Markov strategies.
//!
//! Each path draws the arm's type from the prior, simulates the Lévy payoff
//! process on the experimentation clock, filters the belief exactly, and
//! records two discounted-payoff estimators on the same randomness:
//!
//! * `payoff`: the realized payoff stream `∫ r e^{-rs} dY(s)`;
//! * `belief`: the belief representation `∫ r e^{-rs} W(p_s, κ(p_s)) ds`
//!   with `W(p, κ) = (μ₁p + μ₀(1-p))κ + ρ(1-κ)`.
//!
//! Both have the same expectation. Per-path random streams are keyed by
//! `(seed, path index)`, so results do not depend on the worker count.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::filter::{init_belief, BeliefFilter, FilterError, Observation, PosteriorFilter};
use crate::model::{ArmType, ValidProblem};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error("could not build worker pool: {0}")]
    Pool(String),
}

/// A stationary Markov control `p ↦ κ(p) ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub enum Strategy {
    /// Safe arm iff `p <= threshold`, risky arm otherwise.
    Cutoff(f64),
    AlwaysRisky,
    AlwaysSafe,
    /// Fixed fraction of time on the risky arm.
    Constant(f64),
    /// Piecewise constant: `(upper, κ)` pairs with increasing `upper`; the
    /// control at `p` is the `κ` of the first entry with `p <= upper`.
    Table(Vec<(f64, f64)>),
}

impl Strategy {
    pub fn cutoff(threshold: f64) -> Result<Self, SimError> {
        if !(0.0..=1.0).contains(&threshold) {
            return Err(SimError::InvalidStrategy(format!("cut-off {threshold} outside [0, 1]")));
        }
        Ok(Strategy::Cutoff(threshold))
    }

    pub fn constant(kappa: f64) -> Result<Self, SimError> {
        if !(0.0..=1.0).contains(&kappa) {
            return Err(SimError::InvalidStrategy(format!("control {kappa} outside [0, 1]")));
        }
        Ok(Strategy::Constant(kappa))
    }

    pub fn table(entries: Vec<(f64, f64)>) -> Result<Self, SimError> {
        if entries.is_empty() {
            return Err(SimError::InvalidStrategy("empty table".into()));
        }
        if entries.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(SimError::InvalidStrategy("table breakpoints must increase".into()));
        }
        if entries.last().is_some_and(|&(upper, _)| !(upper >= 1.0)) {
            return Err(SimError::InvalidStrategy("last table breakpoint must be at least 1".into()));
        }
        if let Some(&(_, k)) = entries.iter().find(|&&(_, k)| !(0.0..=1.0).contains(&k)) {
            return Err(SimError::InvalidStrategy(format!("control {k} outside [0, 1]")));
        }
        Ok(Strategy::Table(entries))
    }

    pub fn control(&self, p: f64) -> f64 {
        match self {
            Strategy::Cutoff(t) => {
                if p <= *t {
                    0.0
                } else {
                    1.0
                }
            }
            Strategy::AlwaysRisky => 1.0,
            Strategy::AlwaysSafe => 0.0,
            Strategy::Constant(k) => *k,
            Strategy::Table(entries) => entries
                .iter()
                .find(|&&(upper, _)| p <= upper)
                .map_or(entries[entries.len() - 1].1, |&(_, k)| k),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Cutoff(t) => write!(f, "cutoff:{t}"),
            Strategy::AlwaysRisky => write!(f, "always-risky"),
            Strategy::AlwaysSafe => write!(f, "always-safe"),
            Strategy::Constant(k) => write!(f, "constant:{k}"),
            Strategy::Table(entries) => {
                write!(f, "table:")?;
                for (i, (upper, k)) in entries.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{upper}={k}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Strategy {
    type Err = SimError;

    /// `cutoff:P`, `always-risky`, `always-safe`, `constant:K` or
    /// `table:U1=K1,U2=K2,...`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SimError::InvalidStrategy(format!("cannot parse strategy {s:?}"));
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        match s.split_once(':') {
            None => match s {
                "always-risky" => Ok(Strategy::AlwaysRisky),
                "always-safe" => Ok(Strategy::AlwaysSafe),
                _ => Err(bad()),
            },
            Some(("cutoff", v)) => Strategy::cutoff(num(v)?),
            Some(("constant", v)) => Strategy::constant(num(v)?),
            Some(("table", v)) => {
                let entries = v
                    .split(',')
                    .map(|e| {
                        let (u, k) = e.split_once('=').ok_or_else(bad)?;
                        Ok((num(u)?, num(k)?))
                    })
                    .collect::<Result<Vec<_>, SimError>>()?;
                Strategy::table(entries)
            }
            Some(_) => Err(bad()),
        }
    }
}

impl Serialize for Strategy {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorKind {
    Payoff,
    Belief,
    Both,
}

impl FromStr for EstimatorKind {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "payoff" => Ok(EstimatorKind::Payoff),
            "belief" => Ok(EstimatorKind::Belief),
            "both" => Ok(EstimatorKind::Both),
            other => Err(SimError::InvalidConfig(format!("unknown estimator {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SimConfig {
    pub dt: f64,
    pub horizon: f64,
    pub paths: usize,
    pub seed: u64,
    pub estimator: EstimatorKind,
    /// Prior probability that the risky arm is High.
    pub p0: f64,
    /// Worker threads; `None` uses the global pool.
    #[serde(skip)]
    pub workers: Option<usize>,
}

pub const DEFAULT_DT: f64 = 1e-3;
pub const DEFAULT_PATHS: usize = 100_000;
/// Default horizons truncate the discount factor at this level.
pub const DEFAULT_TAIL: f64 = 1e-3;

impl SimConfig {
    /// Defaults for a problem with discount rate `r`: `dt = 1e-3`,
    /// `e^{-rT} = 1e-3`, 10⁵ paths, seed 0.
    pub fn defaults(r: f64, p0: f64) -> Self {
        SimConfig {
            dt: DEFAULT_DT,
            horizon: default_horizon(r),
            paths: DEFAULT_PATHS,
            seed: 0,
            estimator: EstimatorKind::Both,
            p0,
            workers: None,
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |m: String| Err(SimError::InvalidConfig(m));
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return bad(format!("horizon must be positive, got {}", self.horizon));
        }
        if self.paths < 2 {
            return bad(format!("need at least 2 paths, got {}", self.paths));
        }
        if !(0.0..=1.0).contains(&self.p0) {
            return bad(format!("p0 = {} outside [0, 1]", self.p0));
        }
        if self.workers == Some(0) {
            return bad("workers must be positive".into());
        }
        Ok(())
    }

    /// Number of steps; the last one may be shorter than `dt`.
    pub fn steps(&self) -> usize {
        // guard against ceil overshooting by one on round-off
        ((self.horizon / self.dt) * (1.0 - 1e-12)).ceil().max(1.0) as usize
    }
}

/// Horizon at which `e^{-rT}` equals [`DEFAULT_TAIL`].
pub fn default_horizon(r: f64) -> f64 {
    -DEFAULT_TAIL.ln() / r
}

/// Counter-based stream for one path: ChaCha keyed by the seed, with the
/// path index as stream id.
pub fn path_rng(seed: u64, path_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path_index);
    rng
}

/// Samples increments of one arm type, caching the per-atom Poisson laws for
/// the last interval length used.
struct ArmSampler {
    drift: f64,
    sigma: f64,
    atoms: Vec<(f64, f64)>,
    cached_dt: f64,
    counts: Vec<Option<Poisson<f64>>>,
}

impl ArmSampler {
    fn new(arm: &ArmType) -> Self {
        let atoms: Vec<(f64, f64)> = arm.jumps.atoms().iter().map(|a| (a.size, a.rate)).collect();
        ArmSampler {
            drift: arm.continuous_drift(),
            sigma: arm.sigma,
            counts: vec![None; atoms.len()],
            atoms,
            cached_dt: f64::NAN,
        }
    }

    fn sample_into<R: Rng + ?Sized>(&mut self, dt: f64, rng: &mut R, obs: &mut Observation) {
        if dt != self.cached_dt {
            self.cached_dt = dt;
            for (slot, &(_, rate)) in self.counts.iter_mut().zip(&self.atoms) {
                *slot = Poisson::new(rate * dt).ok();
            }
        }
        obs.dt = dt;
        obs.continuous_increment = self.drift * dt;
        if self.sigma > 0.0 {
            let z: f64 = rng.sample(StandardNormal);
            obs.continuous_increment += self.sigma * dt.sqrt() * z;
        }
        obs.jumps.clear();
        for (law, &(size, _)) in self.counts.iter().zip(&self.atoms) {
            if let Some(law) = law {
                let n = law.sample(rng) as usize;
                obs.jumps.extend(std::iter::repeat_n(size, n));
            }
        }
    }
}

/// One increment of the arm's Lévy process over `dt`: drift plus Gaussian
/// continuous part and a Poisson number of jumps per atom, listed
/// individually.
pub fn sample_path_step<R: Rng + ?Sized>(arm: &ArmType, dt: f64, rng: &mut R) -> Observation {
    let mut obs = Observation::default();
    ArmSampler::new(arm).sample_into(dt, rng, &mut obs);
    obs
}

/// Outcome of a single simulated path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PathOutcome {
    pub high: bool,
    pub payoff_estimate: f64,
    pub belief_estimate: f64,
    pub final_belief: f64,
}

/// Simulates path `path_index` with the exact posterior filter.
pub fn run_path(
    problem: &ValidProblem,
    strategy: &Strategy,
    config: &SimConfig,
    path_index: u64,
) -> Result<PathOutcome, SimError> {
    let filter = PosteriorFilter::new(problem.info());
    run_path_with(problem, strategy, config, path_index, &filter)
}

/// Simulates path `path_index`, updating beliefs with `filter`.
///
/// The experimentation clock advances by `κ dt` per step and the safe clock
/// by `(1-κ) dt`. Once the control is 0 no further information arrives, so
/// the belief and control stay frozen and the remaining safe payoff is added
/// in closed form. The same happens once the belief is absorbed at 1, with
/// the remaining payoff replaced by its conditional expectation.
pub fn run_path_with<F: BeliefFilter + ?Sized>(
    problem: &ValidProblem,
    strategy: &Strategy,
    config: &SimConfig,
    path_index: u64,
    filter: &F,
) -> Result<PathOutcome, SimError> {
    let mut rng = path_rng(config.seed, path_index);
    let high = rng.random::<f64>() < config.p0;
    let arm = if high { &problem.problem().high } else { &problem.problem().low };
    let mut sampler = ArmSampler::new(arm);

    let (r, rho) = (problem.r(), problem.rho());
    let (mu1, mu0) = (problem.mu_high(), problem.mu_low());
    let horizon = config.horizon;
    let tail = (-r * horizon).exp();
    let step_decay = (-r * config.dt).exp();

    let mut state = init_belief(config.p0)?;
    let mut obs = Observation::default();
    let mut payoff = 0.0;
    let mut belief = 0.0;
    let mut discount = 1.0;

    let steps = config.steps();
    for k in 0..steps {
        let p = state.probability();
        let kappa = strategy.control(p);
        if kappa == 0.0 || state.is_absorbed() {
            let flow = mu1 * kappa + rho * (1.0 - kappa);
            let rest = flow * (discount - tail);
            payoff += rest;
            belief += rest;
            break;
        }
        let t0 = k as f64 * config.dt;
        let (len, next_discount) = if k + 1 == steps {
            (horizon - t0, tail)
        } else {
            (config.dt, discount * step_decay)
        };
        let weight = discount - next_discount;

        belief += ((mu1 * p + mu0 * (1.0 - p)) * kappa + rho * (1.0 - kappa)) * weight;

        sampler.sample_into(kappa * len, &mut rng, &mut obs);
        payoff += weight / len * obs.total_increment() + rho * (1.0 - kappa) * weight;
        state = filter.update(state, &obs)?;
        discount = next_discount;
    }

    Ok(PathOutcome {
        high,
        payoff_estimate: payoff,
        belief_estimate: belief,
        final_belief: state.probability(),
    })
}

/// Runs every path; output is in path-index order whatever the worker
/// count.
pub fn simulate_paths(
    problem: &ValidProblem,
    strategy: &Strategy,
    config: &SimConfig,
) -> Result<Vec<PathOutcome>, SimError> {
    let filter = PosteriorFilter::new(problem.info());
    simulate_paths_with(problem, strategy, config, &filter)
}

fn simulate_paths_with<F: BeliefFilter>(
    problem: &ValidProblem,
    strategy: &Strategy,
    config: &SimConfig,
    filter: &F,
) -> Result<Vec<PathOutcome>, SimError> {
    config.validate()?;
    let run = || {
        (0..config.paths as u64)
            .into_par_iter()
            .map(|i| run_path_with(problem, strategy, config, i, filter))
            .collect::<Result<Vec<_>, _>>()
    };
    match config.workers {
        None => run(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| SimError::Pool(e.to_string()))?
            .install(run),
    }
}

/// Recursive pairwise summation; the result depends only on the order of
/// `xs`.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 16 {
        xs.iter().sum()
    } else {
        let (a, b) = xs.split_at(xs.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EstimatorSummary {
    pub mean: f64,
    pub stderr: f64,
}

impl EstimatorSummary {
    /// Mean and standard error; the mean is summed around the first sample,
    /// so constant samples reproduce their value exactly.
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        let shift = xs.first().copied().unwrap_or(0.0);
        let deviations: Vec<f64> = xs.iter().map(|x| x - shift).collect();
        let mean = shift + pairwise_sum(&deviations) / n;
        let squares: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
        let var = if xs.len() > 1 { pairwise_sum(&squares) / (n - 1.0) } else { 0.0 };
        EstimatorSummary { mean, stderr: (var / n).sqrt() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SimResult {
    /// Headline estimate: the belief estimator unless only the payoff
    /// estimator was requested.
    pub mean: f64,
    pub stderr: f64,
    pub paths: usize,
    /// `max(|μ₀|, |μ₁|, |ρ|) e^{-rT}`, bound on the horizon truncation.
    pub tail_bound: f64,
    pub estimator: EstimatorKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payoff: Option<EstimatorSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub belief: Option<EstimatorSummary>,
    /// Per-path `payoff − belief` of the coupled estimators.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<EstimatorSummary>,
    pub mean_final_belief: f64,
}

/// Aggregates path outcomes into a [`SimResult`].
pub fn summarize(problem: &ValidProblem, config: &SimConfig, outcomes: &[PathOutcome]) -> SimResult {
    let column = |f: fn(&PathOutcome) -> f64| outcomes.iter().map(f).collect::<Vec<f64>>();
    let payoff = EstimatorSummary::from_samples(&column(|o| o.payoff_estimate));
    let belief = EstimatorSummary::from_samples(&column(|o| o.belief_estimate));
    let difference = EstimatorSummary::from_samples(&column(|o| o.payoff_estimate - o.belief_estimate));
    let final_belief = EstimatorSummary::from_samples(&column(|o| o.final_belief));
    let headline = match config.estimator {
        EstimatorKind::Payoff => payoff,
        EstimatorKind::Belief | EstimatorKind::Both => belief,
    };
    let both = config.estimator == EstimatorKind::Both;
    let scale = problem.mu_low().abs().max(problem.mu_high().abs()).max(problem.rho().abs());
    SimResult {
        mean: headline.mean,
        stderr: headline.stderr,
        paths: outcomes.len(),
        tail_bound: scale * (-problem.r() * config.horizon).exp(),
        estimator: config.estimator,
        payoff: (config.estimator != EstimatorKind::Belief).then_some(payoff),
        belief: (config.estimator != EstimatorKind::Payoff).then_some(belief),
        difference: both.then_some(difference),
        mean_final_belief: final_belief.mean,
    }
}

/// Monte Carlo estimate of the discounted payoff of `strategy`.
pub fn estimate(problem: &ValidProblem, strategy: &Strategy, config: &SimConfig) -> Result<SimResult, SimError> {
    let outcomes = simulate_paths(problem, strategy, config)?;
    Ok(summarize(problem, config, &outcomes))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MartingaleReport {
    pub p0: f64,
    pub mean_final_belief: f64,
    pub stderr: f64,
    pub paths: usize,
    pub passed: bool,
}

/// Checks that the terminal posterior averages to the prior under
/// permanent experimentation, at 3 standard errors.
pub fn martingale_diagnostic(problem: &ValidProblem, config: &SimConfig, p0: f64) -> Result<MartingaleReport, SimError> {
    let filter = PosteriorFilter::new(problem.info());
    martingale_diagnostic_with(problem, config, p0, &filter)
}

/// [`martingale_diagnostic`] with a caller-supplied filter.
pub fn martingale_diagnostic_with<F: BeliefFilter>(
    problem: &ValidProblem,
    config: &SimConfig,
    p0: f64,
    filter: &F,
) -> Result<MartingaleReport, SimError> {
    let config = SimConfig { p0, ..config.clone() };
    let outcomes = simulate_paths_with(problem, &Strategy::AlwaysRisky, &config, filter)?;
    let finals: Vec<f64> = outcomes.iter().map(|o| o.final_belief).collect();
    let s = EstimatorSummary::from_samples(&finals);
    Ok(MartingaleReport {
        p0,
        mean_final_belief: s.mean,
        stderr: s.stderr,
        paths: outcomes.len(),
        passed: (s.mean - p0).abs() <= 3.0 * s.stderr,
    })
}

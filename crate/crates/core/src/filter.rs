//! Exact posterior filter for the risky arm's type.
//!
//! The belief is kept as log-odds `ℓ = ln(p / (1-p))`. Over an interval of
//! experimentation time `dt` with continuous increment `x` and jump marks
//! `h₁, …, h_n` the log-likelihood ratio of High against Low is
//!
//! ```text
//! Δℓ = (b₁-b₀)/σ² · (x - ½(b₁+b₀) dt)  -  (ν̄₁-ν̄₀) dt  +  Σ ln(ν₁{hᵢ}/ν₀{hᵢ})
//! ```
//!
//! A jump that only the High type can produce sends `ℓ` to `+∞`.

use serde::Serialize;
use thiserror::Error;

use crate::model::InformationModel;

#[derive(Debug, Error, PartialEq)]
pub enum FilterError {
    #[error("belief {0} outside [0, 1]")]
    BeliefOutOfRange(f64),
    #[error("observation interval must be positive and finite, got {0}")]
    InvalidInterval(f64),
    #[error("continuous increment {0} is not finite")]
    InvalidIncrement(f64),
    #[error("jump size {0} is not an atom of the high jump measure")]
    NotAnAtom(f64),
    #[error("a jump only the high type produces was observed with zero prior on high")]
    ImpossibleObservation,
    #[error("the drift-only belief path requires sigma = 0, got sigma = {0}")]
    BrownianPresent(f64),
}

/// What the decision maker sees while pulling the risky arm for `dt` units
/// of experimentation time.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Observation {
    pub dt: f64,
    /// Increment of the continuous (drift plus Brownian) part.
    pub continuous_increment: f64,
    /// Sizes of the jumps observed in the interval.
    pub jumps: Vec<f64>,
}

impl Observation {
    pub fn new(dt: f64, continuous_increment: f64, jumps: Vec<f64>) -> Self {
        Observation { dt, continuous_increment, jumps }
    }

    /// Total increment of the payoff process over the interval.
    pub fn total_increment(&self) -> f64 {
        self.continuous_increment + self.jumps.iter().sum::<f64>()
    }
}

/// Posterior probability that the risky arm is High, as log-odds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BeliefState {
    pub log_odds: f64,
    pub absorbed_high: bool,
}

impl BeliefState {
    pub fn from_log_odds(log_odds: f64) -> Self {
        BeliefState { log_odds, absorbed_high: log_odds == f64::INFINITY }
    }

    pub fn probability(&self) -> f64 {
        if self.absorbed_high {
            1.0
        } else {
            logistic(self.log_odds)
        }
    }

    pub fn is_absorbed(&self) -> bool {
        self.absorbed_high || self.log_odds == f64::NEG_INFINITY
    }
}

fn logistic(l: f64) -> f64 {
    if l >= 0.0 {
        1.0 / (1.0 + (-l).exp())
    } else {
        let e = l.exp();
        e / (1.0 + e)
    }
}

/// Belief state for prior `p0`; 0 and 1 map to infinite log-odds.
pub fn init_belief(p0: f64) -> Result<BeliefState, FilterError> {
    if !(0.0..=1.0).contains(&p0) {
        return Err(FilterError::BeliefOutOfRange(p0));
    }
    Ok(BeliefState::from_log_odds(p0.ln() - (-p0).ln_1p()))
}

/// Anything that maps a belief and an observation to an updated belief.
///
/// [`PosteriorFilter`] is the exact Bayes update; other implementations
/// exist to exercise the diagnostics.
pub trait BeliefFilter: Sync {
    fn update(&self, state: BeliefState, obs: &Observation) -> Result<BeliefState, FilterError>;
}

/// Exact Bayes filter with the per-problem constants precomputed.
#[derive(Debug, Clone)]
pub struct PosteriorFilter<'a> {
    info: &'a InformationModel,
    /// `(b₁-b₀)/σ²`, 0 without a Brownian part.
    gaussian_slope: f64,
    mid_drift: f64,
    mass_gap: f64,
}

impl<'a> PosteriorFilter<'a> {
    pub fn new(info: &'a InformationModel) -> Self {
        let sigma = info.sigma();
        let gaussian_slope = if sigma > 0.0 {
            (info.high_drift() - info.low_drift()) / (sigma * sigma)
        } else {
            0.0
        };
        PosteriorFilter {
            info,
            gaussian_slope,
            mid_drift: 0.5 * (info.high_drift() + info.low_drift()),
            mass_gap: info.derived().mass_gap,
        }
    }

    /// Log-likelihood-ratio increment of the no-jump information over `dt`
    /// given the continuous increment.
    fn continuous_llr(&self, dt: f64, increment: f64) -> f64 {
        self.gaussian_slope * (increment - self.mid_drift * dt) - self.mass_gap * dt
    }
}

impl BeliefFilter for PosteriorFilter<'_> {
    fn update(&self, state: BeliefState, obs: &Observation) -> Result<BeliefState, FilterError> {
        if !(obs.dt > 0.0) || !obs.dt.is_finite() {
            return Err(FilterError::InvalidInterval(obs.dt));
        }
        if !obs.continuous_increment.is_finite() {
            return Err(FilterError::InvalidIncrement(obs.continuous_increment));
        }
        let mut jump_llr = 0.0;
        let mut reveals = false;
        for &h in &obs.jumps {
            let atom = self.info.atom(h).ok_or(FilterError::NotAnAtom(h))?;
            if atom.reveals_high() {
                reveals = true;
            } else if atom.high_rate != atom.low_rate {
                jump_llr += atom.log_ratio();
            }
        }
        if state.absorbed_high {
            return Ok(state);
        }
        if state.log_odds == f64::NEG_INFINITY {
            return if reveals { Err(FilterError::ImpossibleObservation) } else { Ok(state) };
        }
        if reveals {
            return Ok(BeliefState::from_log_odds(f64::INFINITY));
        }
        let next = state.log_odds + self.continuous_llr(obs.dt, obs.continuous_increment) + jump_llr;
        Ok(BeliefState::from_log_odds(next))
    }
}

/// One exact Bayes update; see [`PosteriorFilter`].
pub fn update_belief(
    state: BeliefState,
    obs: &Observation,
    info: &InformationModel,
) -> Result<BeliefState, FilterError> {
    PosteriorFilter::new(info).update(state, obs)
}

/// Belief after `dt` of experimentation without jumps when there is no
/// Brownian part: the log-odds fall linearly at rate `ν̄₁-ν̄₀`.
pub fn drift_only(p: f64, dt: f64, info: &InformationModel) -> Result<f64, FilterError> {
    if info.sigma() > 0.0 {
        return Err(FilterError::BrownianPresent(info.sigma()));
    }
    if !(dt >= 0.0) || !dt.is_finite() {
        return Err(FilterError::InvalidInterval(dt));
    }
    let state = init_belief(p)?;
    if state.is_absorbed() {
        return Ok(state.probability());
    }
    Ok(logistic(state.log_odds - info.derived().mass_gap * dt))
}

//! Closed-form solution of the two-armed Lévy bandit.
//!
//! Everything the decision maker learns is summarized by a single exponent
//! `α*`, the unique positive root of an increasing function built from the
//! information structure. The optimal policy is a cut-off in the posterior
//! and the value function is the expected risky payoff plus an option value
//! `C (1-p) ((1-p)/p)^α*` for the ability to retreat to the safe arm.

use serde::Serialize;
use thiserror::Error;

use crate::model::{BanditProblem, InformationModel, ModelError, ValidProblem};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 200;
const MAX_DOUBLINGS: usize = 1100;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("NoSignal: the two types are indistinguishable, the root function is identically -r")]
    NoSignal,
    #[error("root search did not converge; last bracket [{lo}, {hi}]")]
    NonConvergence { lo: f64, hi: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("payoff ordering violated: need g0 < rho < g1, got {g0} < {rho} < {g1}")]
    PayoffOrdering { g1: f64, g0: f64, rho: f64 },
    #[error("degenerate cut-off {0}; must lie strictly inside (0, 1)")]
    DegenerateCutoff(f64),
    #[error("belief {0} outside [0, 1]")]
    BeliefOutOfRange(f64),
    #[error("derivatives only exist above the cut-off {p_star}, got p = {p}")]
    BelowCutoff { p: f64, p_star: f64 },
    #[error("grid point {index} (value {value}): {source}")]
    InvalidGridPoint {
        index: usize,
        value: f64,
        #[source]
        source: Box<SolverError>,
    },
    #[error("sweep grid must be non-decreasing")]
    UnorderedGrid,
}

fn root_function_unchecked(info: &InformationModel, alpha: f64) -> f64 {
    let d = info.derived();
    let jumps: f64 = info
        .atoms()
        .iter()
        .filter(|a| a.low_rate > 0.0)
        .map(|a| (alpha * (a.low_rate / a.high_rate).ln()).exp_m1() * a.low_rate)
        .sum();
    jumps + alpha * d.mass_gap + 0.5 * alpha * (alpha + 1.0) * d.snr - info.r()
}

/// `f(α) = Σ ((ν₀/ν₁)(h)^α − 1) ν₀({h}) + α(ν̄₁−ν̄₀) + ½α(α+1)·snr − r`.
///
/// Atoms only the High type produces carry no `ν₀` weight and are skipped.
pub fn root_function(info: &InformationModel, alpha: f64) -> Result<f64, SolverError> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(SolverError::InvalidArgument(format!(
            "alpha must be positive and finite, got {alpha}"
        )));
    }
    Ok(root_function_unchecked(info, alpha))
}

/// Finds `α*` by bracket doubling from 1 followed by bisection.
///
/// The left end of the bracket starts at 0, where `f` tends to `-r`.
/// Bisection stops once the bracket is narrower than `tol` and
/// `|f| <= tol * r` at the returned endpoint, or once the bracket cannot be
/// split further in double precision.
pub fn solve_alpha(info: &InformationModel, tol: f64) -> Result<f64, SolverError> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(SolverError::InvalidArgument(format!("tol must be positive, got {tol}")));
    }
    if !info.has_signal() {
        return Err(SolverError::NoSignal);
    }
    let f = |a: f64| root_function_unchecked(info, a);
    let r = info.r();

    let (mut lo, mut f_lo) = (0.0, -r);
    let mut hi = 1.0;
    let mut f_hi = f(hi);
    let mut doublings = 0;
    while f_hi <= 0.0 {
        if f_hi == 0.0 {
            return Ok(hi);
        }
        lo = hi;
        f_lo = f_hi;
        hi *= 2.0;
        f_hi = f(hi);
        doublings += 1;
        if doublings > MAX_DOUBLINGS || !f_hi.is_finite() {
            return Err(SolverError::NonConvergence { lo, hi });
        }
    }

    let best = |lo: f64, f_lo: f64, hi: f64, f_hi: f64| {
        if f_lo.abs() <= f_hi.abs() {
            (lo, f_lo)
        } else {
            (hi, f_hi)
        }
    };
    for _ in 0..MAX_ITERATIONS {
        if hi - lo <= tol {
            let (x, fx) = best(lo, f_lo, hi, f_hi);
            if lo > 0.0 && fx.abs() <= tol * r {
                return Ok(x);
            }
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            // bracket exhausted at double precision
            let (x, _) = best(lo, f_lo, hi, f_hi);
            return Ok(if x > 0.0 { x } else { hi });
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid < 0.0 {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    Err(SolverError::NonConvergence { lo, hi })
}

fn check_ordering(g1: f64, g0: f64, rho: f64) -> Result<(), SolverError> {
    if g0 < rho && rho < g1 {
        Ok(())
    } else {
        Err(SolverError::PayoffOrdering { g1, g0, rho })
    }
}

/// Belief at which a myopic decision maker is indifferent between arms.
pub fn myopic_cutoff(g1: f64, g0: f64, rho: f64) -> Result<f64, SolverError> {
    check_ordering(g1, g0, rho)?;
    Ok((rho - g0) / (g1 - g0))
}

/// Optimal cut-off `p* = α(ρ−g₀) / ((α+1)(g₁−ρ) + α(ρ−g₀))`.
pub fn cutoff(alpha_star: f64, g1: f64, g0: f64, rho: f64) -> Result<f64, SolverError> {
    check_ordering(g1, g0, rho)?;
    if !(alpha_star > 0.0) || !alpha_star.is_finite() {
        return Err(SolverError::InvalidArgument(format!(
            "alpha* must be positive and finite, got {alpha_star}"
        )));
    }
    let gain = rho - g0;
    let loss = g1 - rho;
    let p = alpha_star * gain / ((alpha_star + 1.0) * loss + alpha_star * gain);
    if !(p > 0.0 && p < 1.0) {
        return Err(SolverError::DegenerateCutoff(p));
    }
    Ok(p)
}

/// Option-value coefficient `C = (ρ − g₀ − p*(g₁−g₀)) / ((1−p*)((1−p*)/p*)^α)`.
pub fn option_coefficient(
    alpha_star: f64,
    p_star: f64,
    g1: f64,
    g0: f64,
    rho: f64,
) -> Result<f64, SolverError> {
    if !(p_star > 0.0 && p_star < 1.0) {
        return Err(SolverError::DegenerateCutoff(p_star));
    }
    let odds = (1.0 - p_star) / p_star;
    Ok((rho - g0 - p_star * (g1 - g0)) / ((1.0 - p_star) * odds.powf(alpha_star)))
}

/// The solved problem: root, cut-off, option coefficient and the value
/// function `U(0, ·)`.
#[derive(Debug, Clone)]
pub struct Solution {
    problem: ValidProblem,
    pub alpha_star: f64,
    pub p_star: f64,
    pub p_myopic: f64,
    pub c_alpha: f64,
    pub g1: f64,
    pub g0: f64,
    /// `ρ − g₀ − p*(g₁−g₀)`: the option value at the cut-off.
    option_at_cutoff: f64,
}

/// Solves with the arm means as payoff parameters.
pub fn solve(problem: &ValidProblem, tol: f64) -> Result<Solution, SolverError> {
    solve_general(problem, problem.mu_high(), problem.mu_low(), tol)
}

/// Solves with arbitrary expected payoffs `(g1, g0)` for the two types.
///
/// The root depends only on the information structure; the payoffs only
/// move the cut-off and the value function.
pub fn solve_general(problem: &ValidProblem, g1: f64, g0: f64, tol: f64) -> Result<Solution, SolverError> {
    let rho = problem.rho();
    check_ordering(g1, g0, rho)?;
    let alpha_star = solve_alpha(problem.info(), tol)?;
    Solution::from_root(problem.clone(), alpha_star, g1, g0)
}

impl Solution {
    /// Builds the solution around a known root.
    pub fn from_root(problem: ValidProblem, alpha_star: f64, g1: f64, g0: f64) -> Result<Self, SolverError> {
        let rho = problem.rho();
        let p_star = cutoff(alpha_star, g1, g0, rho)?;
        let p_myopic = myopic_cutoff(g1, g0, rho)?;
        let c_alpha = option_coefficient(alpha_star, p_star, g1, g0, rho)?;
        Ok(Solution {
            option_at_cutoff: rho - g0 - p_star * (g1 - g0),
            problem,
            alpha_star,
            p_star,
            p_myopic,
            c_alpha,
            g1,
            g0,
        })
    }

    pub fn problem(&self) -> &ValidProblem {
        &self.problem
    }

    pub fn rho(&self) -> f64 {
        self.problem.rho()
    }

    /// Expected flow payoff of the risky arm at belief `p`.
    pub fn risky_payoff(&self, p: f64) -> f64 {
        self.g1 * p + self.g0 * (1.0 - p)
    }

    /// `C (1−p)((1−p)/p)^α`, written relative to the cut-off so that large
    /// exponents neither overflow nor underflow.
    fn option_value(&self, p: f64) -> f64 {
        if p >= 1.0 {
            return 0.0;
        }
        let (ps, a) = (self.p_star, self.alpha_star);
        let odds_ratio = ((1.0 - p) * ps) / (p * (1.0 - ps));
        self.option_at_cutoff * (1.0 - p) / (1.0 - ps) * odds_ratio.powf(a)
    }

    /// The continuation branch `F₁(p)`, defined for every `p ∈ (0, 1]`.
    pub fn continuation_value(&self, p: f64) -> f64 {
        self.risky_payoff(p) + self.option_value(p)
    }

    /// `(F₁′(p), F₁″(p))` for `p ∈ (0, 1)`.
    pub fn continuation_derivatives(&self, p: f64) -> (f64, f64) {
        let opt = self.option_value(p);
        let a = self.alpha_star;
        let q = p * (1.0 - p);
        let d1 = (self.g1 - self.g0) - opt * (a + p) / q;
        let d2 = opt * a * (a + 1.0) / (q * q);
        (d1, d2)
    }

    /// `U(0, p)`: `ρ` up to and including the cut-off, `F₁(p)` above it.
    pub fn value(&self, p: f64) -> Result<f64, SolverError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(SolverError::BeliefOutOfRange(p));
        }
        Ok(self.value_unchecked(p))
    }

    pub(crate) fn value_unchecked(&self, p: f64) -> f64 {
        if p <= self.p_star {
            self.rho()
        } else {
            self.continuation_value(p)
        }
    }

    /// Analytic first and second derivative of the value above the cut-off.
    pub fn value_derivatives(&self, p: f64) -> Result<(f64, f64), SolverError> {
        if !(p > self.p_star && p < 1.0) {
            return Err(SolverError::BelowCutoff { p, p_star: self.p_star });
        }
        Ok(self.continuation_derivatives(p))
    }

    /// Optimal control: experiment iff the belief is above the cut-off.
    pub fn optimal_control(&self, p: f64) -> f64 {
        if p > self.p_star {
            1.0
        } else {
            0.0
        }
    }

    pub fn summary(&self) -> SolutionSummary {
        SolutionSummary {
            alpha_star: self.alpha_star,
            p_star: self.p_star,
            p_myopic: self.p_myopic,
            c_alpha: self.c_alpha,
            g1: self.g1,
            g0: self.g0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SolutionSummary {
    pub alpha_star: f64,
    pub p_star: f64,
    pub p_myopic: f64,
    pub c_alpha: f64,
    pub g1: f64,
    pub g0: f64,
}

/// Parameter varied by [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepParameter {
    /// Discount rate.
    R,
    /// Common Brownian coefficient; total means are held fixed.
    Sigma,
    /// Safe-arm flow payoff.
    Rho,
    /// Multiplier on every jump rate of both types; continuous drifts are
    /// held fixed, so the total means move with the jump part.
    JumpScale,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::R => "r",
            SweepParameter::Sigma => "sigma",
            SweepParameter::Rho => "rho",
            SweepParameter::JumpScale => "jump-scale",
        }
    }

    /// The problem with this parameter set to `value`.
    pub fn apply(self, base: &BanditProblem, value: f64) -> BanditProblem {
        let mut p = base.clone();
        match self {
            SweepParameter::R => p.r = value,
            SweepParameter::Rho => p.rho = value,
            SweepParameter::Sigma => {
                p.high.sigma = value;
                p.low.sigma = value;
            }
            SweepParameter::JumpScale => {
                for (arm, base_arm) in [(&mut p.high, &base.high), (&mut p.low, &base.low)] {
                    let drift = base_arm.continuous_drift();
                    arm.jumps = base_arm.jumps.scaled(value);
                    arm.mu = drift + arm.jumps.first_moment();
                }
            }
        }
        p
    }
}

impl std::str::FromStr for SweepParameter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "r" => Ok(SweepParameter::R),
            "sigma" => Ok(SweepParameter::Sigma),
            "rho" => Ok(SweepParameter::Rho),
            "jump-scale" | "jumpScale" => Ok(SweepParameter::JumpScale),
            other => Err(format!("unknown sweep parameter {other:?} (expected r, sigma, rho or jump-scale)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepRow {
    pub parameter: f64,
    pub alpha_star: f64,
    pub p_star: f64,
    pub p_myopic: f64,
    pub value_at_probe: f64,
}

/// Re-solves the problem for every grid value of `parameter`.
pub fn sweep(
    problem: &BanditProblem,
    parameter: SweepParameter,
    grid: &[f64],
    probe: f64,
    tol: f64,
) -> Result<Vec<SweepRow>, SolverError> {
    if grid.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(SolverError::UnorderedGrid);
    }
    if !(0.0..=1.0).contains(&probe) {
        return Err(SolverError::BeliefOutOfRange(probe));
    }
    grid.iter()
        .enumerate()
        .map(|(index, &value)| {
            let wrap = |e: SolverError| SolverError::InvalidGridPoint { index, value, source: Box::new(e) };
            let valid = parameter.apply(problem, value).validated().map_err(|e| wrap(e.into()))?;
            let sol = solve(&valid, tol).map_err(wrap)?;
            Ok(SweepRow {
                parameter: value,
                alpha_star: sol.alpha_star,
                p_star: sol.p_star,
                p_myopic: sol.p_myopic,
                value_at_probe: sol.value_unchecked(probe),
            })
        })
        .collect()
}

/// Monotonicity of a sweep's columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepMonotonicity {
    pub alpha_strictly_increasing: bool,
    pub alpha_strictly_decreasing: bool,
    pub p_star_strictly_increasing: bool,
    pub p_star_strictly_decreasing: bool,
    pub below_myopic: bool,
}

pub fn monotonicity(rows: &[SweepRow]) -> SweepMonotonicity {
    let pairs = || rows.windows(2);
    SweepMonotonicity {
        alpha_strictly_increasing: pairs().all(|w| w[0].alpha_star < w[1].alpha_star),
        alpha_strictly_decreasing: pairs().all(|w| w[0].alpha_star > w[1].alpha_star),
        p_star_strictly_increasing: pairs().all(|w| w[0].p_star < w[1].p_star),
        p_star_strictly_decreasing: pairs().all(|w| w[0].p_star > w[1].p_star),
        below_myopic: rows.iter().all(|r| r.p_star < r.p_myopic),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{InformationModel, JumpMeasure};
    use proptest::prelude::*;

    fn info(p: &BanditProblem) -> InformationModel {
        InformationModel::new(p).unwrap()
    }

    fn krc_solution() -> Solution {
        solve(&fixtures::krc(1.0, 1.0, 0.5).validated().unwrap(), DEFAULT_TOL).unwrap()
    }

    #[test]
    fn root_function_tends_to_minus_r_at_zero() {
        for p in [fixtures::krc(1.5, 1.0, 0.5), fixtures::mixed(), fixtures::kr2010(0.7, 2.0, 1.0, 1.5)] {
            let m = info(&p);
            let v = root_function(&m, 1e-12).unwrap();
            assert!((v + p.r).abs() < 1e-9, "{v}");
        }
    }

    #[test]
    fn root_function_krc_vanishes_at_r_over_lambda() {
        let m = info(&fixtures::krc(1.0, 1.0, 0.5));
        assert_eq!(root_function(&m, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn root_function_kr2010_at_one() {
        let m = info(&fixtures::kr2010(1.0, 2.0, 1.0, 1.5));
        // λ_L (λ_L/λ_H)^1 + 1·(λ_H − λ_L) − λ_L − r
        let oracle = 1.0 * 0.5 + 1.0 - 1.0 - 1.0;
        assert!((root_function(&m, 1.0).unwrap() - oracle).abs() < 1e-15);
        assert!((oracle - -0.5_f64).abs() < 1e-15);
    }

    #[test]
    fn root_function_rejects_nonpositive_alpha() {
        let m = info(&fixtures::krc(1.0, 1.0, 0.5));
        assert!(root_function(&m, 0.0).is_err());
        assert!(root_function(&m, -1.0).is_err());
    }

    #[test]
    fn krc_alpha_is_r_over_lambda() {
        let a = solve_alpha(&info(&fixtures::krc(1.0, 1.0, 0.5)), DEFAULT_TOL).unwrap();
        assert!((a - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn bolton_harris_alpha_closed_form() {
        let a = solve_alpha(&info(&fixtures::bolton_harris(1.0, 1.0, 1.0, -1.0, 0.0)), DEFAULT_TOL).unwrap();
        let expected = (3f64.sqrt() - 1.0) / 2.0;
        assert!((a - expected).abs() <= 1e-12, "{a} vs {expected}");
        assert!((a - 0.3660254).abs() < 1e-7);
    }

    #[test]
    fn indistinguishable_types_have_no_signal() {
        let m = info(&fixtures::indistinguishable());
        assert!(matches!(solve_alpha(&m, DEFAULT_TOL), Err(SolverError::NoSignal)));
    }

    #[test]
    fn solve_alpha_rejects_bad_tolerance() {
        let m = info(&fixtures::krc(1.0, 1.0, 0.5));
        assert!(solve_alpha(&m, 0.0).is_err());
        assert!(solve_alpha(&m, f64::NAN).is_err());
    }

    #[test]
    fn tiny_alpha_root_is_found() {
        let m = info(&fixtures::krc(1e-8, 1.0, 0.5));
        let a = solve_alpha(&m, DEFAULT_TOL).unwrap();
        assert!((a - 1e-8).abs() <= 1e-12);
    }

    #[test]
    fn cutoff_examples() {
        assert!((cutoff(1.0, 1.0, 0.0, 0.5).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((cutoff(1e6, 1.0, 0.0, 0.5).unwrap() - 0.5).abs() < 1e-5);
        assert_eq!(myopic_cutoff(1.0, 0.0, 0.5).unwrap(), 0.5);
        assert!(matches!(cutoff(1.0, 0.0, 1.0, 0.5), Err(SolverError::PayoffOrdering { .. })));
        assert!(cutoff(0.0, 1.0, 0.0, 0.5).is_err());
    }

    #[test]
    fn option_coefficient_example() {
        let c = option_coefficient(1.0, 1.0 / 3.0, 1.0, 0.0, 0.5).unwrap();
        assert!((c - 0.125).abs() < 1e-15);
        assert!(option_coefficient(1.0, 0.0, 1.0, 0.0, 0.5).is_err());
        assert!(option_coefficient(1.0, 1.0, 1.0, 0.0, 0.5).is_err());
    }

    #[test]
    fn value_examples_on_krc() {
        let s = krc_solution();
        assert!((s.c_alpha - 0.125).abs() < 1e-12);
        assert_eq!(s.value(1.0).unwrap(), 1.0);
        assert_eq!(s.value(0.0).unwrap(), 0.5);
        assert_eq!(s.value(s.p_star / 2.0).unwrap(), 0.5);
        assert_eq!(s.value(s.p_star).unwrap(), 0.5);
        // (2/3)·1 + 0.125·(1/3)·(1/2)
        let oracle = 2.0 / 3.0 + 0.125 * (1.0 / 3.0) * 0.5;
        assert!((s.value(2.0 / 3.0).unwrap() - oracle).abs() < 1e-12);
        assert!((oracle - 0.6875).abs() < 1e-12);
        assert!(s.value(1.1).is_err());
        assert!(s.value(-0.1).is_err());
    }

    #[test]
    fn value_matching_and_smooth_pasting_on_krc() {
        let s = krc_solution();
        assert!((s.continuation_value(s.p_star) - s.rho()).abs() <= 1e-12);
        assert!(s.continuation_derivatives(s.p_star).0.abs() <= 1e-10);
    }

    /// Central differences of the value, step `h`.
    fn fd(s: &Solution, p: f64, h: f64) -> (f64, f64) {
        let f = |x: f64| s.value(x).unwrap();
        ((f(p + h) - f(p - h)) / (2.0 * h), (f(p + h) - 2.0 * f(p) + f(p - h)) / (h * h))
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let s = krc_solution();
        let (d1, d2) = s.value_derivatives(0.8).unwrap();
        let (f1, _) = fd(&s, 0.8, 1e-6);
        let (_, f2) = fd(&s, 0.8, 1e-4);
        assert!((d1 - f1).abs() <= 1e-6 * d1.abs().max(1.0), "{d1} vs {f1}");
        assert!((d2 - f2).abs() <= 1e-6 * d2.abs().max(1.0), "{d2} vs {f2}");
        assert!(d2 > 0.0);
        assert!(s.value_derivatives(s.p_star).is_err());
        assert!(s.value_derivatives(0.1).is_err());
    }

    #[test]
    fn second_derivative_positive_above_cutoff() {
        let s = solve(&fixtures::mixed().validated().unwrap(), DEFAULT_TOL).unwrap();
        for i in 1..100 {
            let p = s.p_star + (1.0 - s.p_star) * i as f64 / 100.0;
            assert!(s.value_derivatives(p).unwrap().1 > 0.0);
        }
    }

    #[test]
    fn general_payoffs_keep_alpha() {
        let valid = fixtures::krc(1.0, 1.0, 0.5).validated().unwrap();
        let s = solve_general(&valid, 2.0, 0.0, DEFAULT_TOL).unwrap();
        assert!((s.p_star - 1.0 / 7.0).abs() < 1e-12);
        let base = solve(&valid, DEFAULT_TOL).unwrap();
        for g1 in [0.6, 1.0, 3.0, 10.0] {
            let s = solve_general(&valid, g1, 0.0, DEFAULT_TOL).unwrap();
            assert_eq!(s.alpha_star, base.alpha_star);
        }
        let same = solve_general(&valid, 1.0, 0.0, DEFAULT_TOL).unwrap();
        assert_eq!(same.summary(), base.summary());
        assert!(solve_general(&valid, 0.4, 0.0, DEFAULT_TOL).is_err());
    }

    #[test]
    fn krc_r_sweep() {
        let rows = sweep(&fixtures::krc(1.0, 1.0, 0.5), SweepParameter::R, &[0.5, 1.0, 2.0], 0.5, DEFAULT_TOL).unwrap();
        for (row, expected) in rows.iter().zip([0.5, 1.0, 2.0]) {
            assert!((row.alpha_star - expected).abs() < 1e-12);
        }
        let m = monotonicity(&rows);
        assert!(m.alpha_strictly_increasing && m.p_star_strictly_increasing && m.below_myopic);
    }

    #[test]
    fn alpha_vanishes_as_r_goes_to_zero() {
        let rows = sweep(&fixtures::krc(1.0, 1.0, 0.5), SweepParameter::R, &[1e-9, 1e-6, 1e-3], 0.5, DEFAULT_TOL).unwrap();
        assert!(rows[0].alpha_star < 1e-8);
        assert!(monotonicity(&rows).alpha_strictly_increasing);
    }

    #[test]
    fn sweep_reports_invalid_grid_point() {
        let err = sweep(&fixtures::krc(1.0, 1.0, 0.5), SweepParameter::Rho, &[0.2, 0.5, 1.5], 0.5, DEFAULT_TOL)
            .unwrap_err();
        assert!(matches!(err, SolverError::InvalidGridPoint { index: 2, .. }), "{err}");
        assert!(matches!(
            sweep(&fixtures::krc(1.0, 1.0, 0.5), SweepParameter::R, &[2.0, 1.0], 0.5, DEFAULT_TOL),
            Err(SolverError::UnorderedGrid)
        ));
    }

    #[test]
    fn jump_scale_keeps_continuous_drift() {
        let base = fixtures::mixed();
        let scaled = SweepParameter::JumpScale.apply(&base, 2.0);
        assert!((scaled.high.continuous_drift() - base.high.continuous_drift()).abs() < 1e-15);
        assert_eq!(scaled.high.jumps.total_rate(), 2.0 * base.high.jumps.total_rate());
        let rows = sweep(&base, SweepParameter::JumpScale, &[0.5, 1.0, 1.5, 1.9], 0.7, DEFAULT_TOL).unwrap();
        // more informative jumps lower the root
        assert!(monotonicity(&rows).alpha_strictly_decreasing);
    }

    #[test]
    fn sigma_sweep_makes_learning_slower() {
        let rows = sweep(
            &fixtures::bolton_harris(1.0, 1.0, 1.0, -1.0, 0.0),
            SweepParameter::Sigma,
            &[0.5, 1.0, 2.0],
            0.5,
            DEFAULT_TOL,
        )
        .unwrap();
        assert!(monotonicity(&rows).alpha_strictly_increasing);
    }

    fn valid_problem() -> impl Strategy<Value = ValidProblem> {
        (
            prop_oneof![Just(0.0), 0.1..2.0f64],
            proptest::collection::vec((0.1..2.0f64, 0.0..1.0f64), 0..3),
            -1.0..1.0f64,
            0.0..1.0f64,
            0.05..0.95f64,
            0.05..4.0f64,
        )
            .prop_filter_map("invalid", |(sigma, rates, b1, db, frac, r)| {
                let sizes = [0.5, 1.0, -0.75];
                let high = JumpMeasure::new(rates.iter().enumerate().map(|(i, (hr, _))| (sizes[i], *hr)));
                let low = JumpMeasure::new(rates.iter().enumerate().map(|(i, (hr, q))| (sizes[i], hr * q)));
                let b0 = if sigma == 0.0 { b1 } else { b1 - db };
                let mu1 = b1 + high.first_moment();
                let mu0 = b0 + low.first_moment();
                if mu1 - mu0 < 1e-3 {
                    return None;
                }
                let rho = mu0 + frac * (mu1 - mu0);
                use crate::model::ArmType;
                BanditProblem::new(ArmType::new(mu1, sigma, high), ArmType::new(mu0, sigma, low), rho, r)
                    .validated()
                    .ok()
            })
    }

    proptest! {
        #[test]
        fn root_function_strictly_increasing(p in valid_problem()) {
            let grid: Vec<f64> = (1..60).map(|i| 0.05 * i as f64).collect();
            let vals: Vec<f64> = grid.iter().map(|&a| root_function(p.info(), a).unwrap()).collect();
            prop_assert!(vals.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn refining_tolerance_barely_moves_root(p in valid_problem()) {
            let tol = 1e-8;
            let a = solve_alpha(p.info(), tol).unwrap();
            let b = solve_alpha(p.info(), tol / 10.0).unwrap();
            prop_assert!((a - b).abs() <= tol);
            prop_assert!(root_function(p.info(), a).unwrap().abs() <= tol * p.r() * 10.0);
        }

        #[test]
        fn cutoff_below_myopic_and_increasing_in_alpha(p in valid_problem()) {
            let s = solve(&p, DEFAULT_TOL).unwrap();
            prop_assert!(0.0 < s.p_star && s.p_star < s.p_myopic && s.p_myopic < 1.0);
            prop_assert!(s.c_alpha > 0.0);
            let bigger = cutoff(s.alpha_star * 1.5, s.g1, s.g0, s.rho()).unwrap();
            prop_assert!(bigger > s.p_star);
        }

        #[test]
        fn value_is_convex_and_monotone(p in valid_problem(), triples in proptest::collection::vec((0.0..1.0f64, 0.0..1.0f64, 0.0..1.0f64), 100)) {
            let s = solve(&p, DEFAULT_TOL).unwrap();
            for (a, b, c) in triples {
                let mut v = [a, b, c];
                v.sort_by(f64::total_cmp);
                let [p1, p2, p3] = v;
                if p3 - p1 < 1e-9 { continue; }
                let (f1, f2, f3) = (s.value(p1).unwrap(), s.value(p2).unwrap(), s.value(p3).unwrap());
                let w = (p2 - p1) / (p3 - p1);
                prop_assert!(f2 <= (1.0 - w) * f1 + w * f3 + 1e-12);
                prop_assert!(f1 <= f2 + 1e-12 && f2 <= f3 + 1e-12);
            }
            prop_assert_eq!(s.value(0.0).unwrap(), s.rho());
            prop_assert!((s.value(1.0).unwrap() - s.g1).abs() <= 1e-12);
        }

        #[test]
        fn smooth_pasting_holds(p in valid_problem()) {
            let s = solve(&p, DEFAULT_TOL).unwrap();
            prop_assert!((s.continuation_value(s.p_star) - s.rho()).abs() <= 1e-12);
            prop_assert!(s.continuation_derivatives(s.p_star).0.abs() <= 1e-10);
        }
    }
}

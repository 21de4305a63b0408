//! Infinitesimal generator of the posterior process under a stationary
//! control, and the HJB residual it induces for a solved problem.
//!
//! For a control `κ ∈ [0, 1]` and a test function `f` on the belief simplex
//!
//! ```text
//! L^κ f(p) = κ [ -(ν̄₁-ν̄₀) p(1-p) f'(p) + ½ β²σ² p²(1-p)² f''(p)
//!              + Σ_h (f(j_h(p)) - f(p)) (p ν₁{h} + (1-p) ν₀{h}) ]
//! ```
//!
//! where `j_h(p)` is the Bayes update after a jump of size `h`.

use thiserror::Error;

use crate::model::{AtomPair, InformationModel};
use crate::solver::Solution;

#[derive(Debug, Error, PartialEq)]
pub enum GeneratorError {
    #[error("jump size {0} is not an atom of the high jump measure")]
    NotAnAtom(f64),
    #[error("belief {0} must lie in {1}")]
    BeliefOutOfRange(f64, &'static str),
    #[error("control {0} outside [0, 1]")]
    ControlOutOfRange(f64),
    #[error("test function has no second derivative at p = {0}")]
    DerivativeUnavailable(f64),
    #[error("the value function is not twice differentiable at the cut-off {0}")]
    AtBoundary(f64),
}

/// A function of the belief that the generator can act on.
pub trait BeliefFunction {
    fn value(&self, p: f64) -> f64;

    /// `(f'(p), f''(p))`, or `None` where `f` is not twice differentiable.
    fn derivatives(&self, p: f64) -> Option<(f64, f64)>;
}

/// A test function assembled from closures for `f`, `f'` and `f''`.
pub struct SmoothFn<F, D1, D2> {
    f: F,
    d1: D1,
    d2: D2,
}

impl<F, D1, D2> SmoothFn<F, D1, D2>
where
    F: Fn(f64) -> f64,
    D1: Fn(f64) -> f64,
    D2: Fn(f64) -> f64,
{
    pub fn new(f: F, d1: D1, d2: D2) -> Self {
        SmoothFn { f, d1, d2 }
    }
}

impl<F, D1, D2> BeliefFunction for SmoothFn<F, D1, D2>
where
    F: Fn(f64) -> f64,
    D1: Fn(f64) -> f64,
    D2: Fn(f64) -> f64,
{
    fn value(&self, p: f64) -> f64 {
        (self.f)(p)
    }

    fn derivatives(&self, p: f64) -> Option<(f64, f64)> {
        Some(((self.d1)(p), (self.d2)(p)))
    }
}

/// The piecewise value function: flat below the cut-off, the continuation
/// branch above, with no second derivative at the cut-off itself.
impl BeliefFunction for Solution {
    fn value(&self, p: f64) -> f64 {
        self.value_unchecked(p)
    }

    fn derivatives(&self, p: f64) -> Option<(f64, f64)> {
        if p < self.p_star {
            Some((0.0, 0.0))
        } else if p > self.p_star {
            Some(self.continuation_derivatives(p))
        } else {
            None
        }
    }
}

pub(crate) fn jump_target(p: f64, atom: &AtomPair) -> f64 {
    if p <= 0.0 {
        return 0.0;
    }
    let up = p * atom.high_rate;
    up / (up + (1.0 - p) * atom.low_rate)
}

/// Posterior after observing a jump of size `h` from prior `p`.
pub fn belief_jump(info: &InformationModel, p: f64, h: f64) -> Result<f64, GeneratorError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GeneratorError::BeliefOutOfRange(p, "[0, 1]"));
    }
    let atom = info.atom(h).ok_or(GeneratorError::NotAnAtom(h))?;
    Ok(jump_target(p, atom))
}

/// `(L^κ f)(p)` as an exact finite sum over the atoms.
pub fn apply_generator(
    info: &InformationModel,
    f: &impl BeliefFunction,
    p: f64,
    kappa: f64,
) -> Result<f64, GeneratorError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(GeneratorError::BeliefOutOfRange(p, "(0, 1)"));
    }
    if !(0.0..=1.0).contains(&kappa) {
        return Err(GeneratorError::ControlOutOfRange(kappa));
    }
    if kappa == 0.0 {
        return Ok(0.0);
    }
    let (d1, d2) = f.derivatives(p).ok_or(GeneratorError::DerivativeUnavailable(p))?;
    let d = info.derived();
    let q = p * (1.0 - p);
    let fp = f.value(p);
    let jumps: f64 = info
        .atoms()
        .iter()
        .map(|a| (f.value(jump_target(p, a)) - fp) * (p * a.high_rate + (1.0 - p) * a.low_rate))
        .sum();
    Ok(kappa * (-d.mass_gap * q * d1 + 0.5 * d.snr * q * q * d2 + jumps))
}

/// `L^κ F(p) + r W(p, κ) − r F(p)` for the solved value `F`, with
/// `W(p, κ) = (g₁p + g₀(1−p)) κ + ρ(1−κ)`.
///
/// Non-positive for every control and zero at the optimal one.
pub fn hjb_residual(solution: &Solution, p: f64, kappa: f64) -> Result<f64, GeneratorError> {
    if p == solution.p_star {
        return Err(GeneratorError::AtBoundary(p));
    }
    let info = solution.problem().info();
    let generator = apply_generator(info, solution, p, kappa)?;
    let rho = solution.rho();
    let flow = solution.risky_payoff(p) * kappa + rho * (1.0 - kappa);
    Ok(generator + info.r() * (flow - solution.value_unchecked(p)))
}

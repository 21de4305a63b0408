//! Canonical problem instances: the classic special cases of the two-armed
//! Lévy bandit plus a mixed jump-diffusion instance.

use crate::model::{ArmType, BanditProblem, JumpMeasure};

/// Exponential bandit: Low pays nothing, High pays 1 at Poisson rate
/// `lambda`. The optimal root is `r / lambda`.
pub fn krc(r: f64, lambda: f64, rho: f64) -> BanditProblem {
    BanditProblem::new(
        ArmType::new(lambda, 0.0, JumpMeasure::new([(1.0, lambda)])),
        ArmType::new(0.0, 0.0, JumpMeasure::empty()),
        rho,
        r,
    )
}

/// Brownian bandit: both types are Brownian motions with drift.
pub fn bolton_harris(r: f64, sigma: f64, mu_high: f64, mu_low: f64, rho: f64) -> BanditProblem {
    BanditProblem::new(
        ArmType::new(mu_high, sigma, JumpMeasure::empty()),
        ArmType::new(mu_low, sigma, JumpMeasure::empty()),
        rho,
        r,
    )
}

/// Poisson bandit where both types pay 1 per jump, at rates
/// `lambda_high > lambda_low`.
pub fn kr2010(r: f64, lambda_high: f64, lambda_low: f64, rho: f64) -> BanditProblem {
    BanditProblem::new(
        ArmType::new(lambda_high, 0.0, JumpMeasure::new([(1.0, lambda_high)])),
        ArmType::new(lambda_low, 0.0, JumpMeasure::new([(1.0, lambda_low)])),
        rho,
        r,
    )
}

/// Brownian part with informative drift plus two informative atoms, one of
/// them a negative jump. The jump parts have different means, so the
/// Brownian signal differs from `((mu_high - mu_low) / sigma)²`.
pub fn mixed() -> BanditProblem {
    let sigma = 0.5;
    let high = JumpMeasure::new([(1.0, 1.0), (-0.5, 0.6)]);
    let low = JumpMeasure::new([(1.0, 0.4), (-0.5, 0.3)]);
    let (b_high, b_low) = (0.2, 0.0);
    BanditProblem::new(
        ArmType::new(b_high + high.first_moment(), sigma, high),
        ArmType::new(b_low + low.first_moment(), sigma, low),
        0.5,
        1.0,
    )
}

/// Both hypotheses identical; observations carry no information and the
/// payoff ordering cannot hold.
pub fn indistinguishable() -> BanditProblem {
    let arm = ArmType::new(1.0, 0.0, JumpMeasure::new([(1.0, 1.0)]));
    BanditProblem::new(arm.clone(), arm, 0.5, 1.0)
}

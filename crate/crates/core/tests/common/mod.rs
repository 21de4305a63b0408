#![allow(dead_code)]

use levy_bandit::model::{ArmType, BanditProblem, JumpMeasure, ValidProblem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn config(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(format!("{name}.json"))
}

/// Valid problems mixing Brownian noise with up to three atoms, at least
/// one of them revealing High when `reveal` is drawn.
pub fn random_problems(n: usize, seed: u64) -> Vec<ValidProblem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let sigma = if rng.random_bool(0.3) { 0.0 } else { rng.random_range(0.1..2.0) };
        let atoms = rng.random_range(0..=3usize);
        let sizes = [1.0, -0.5, 2.5];
        let mut high = Vec::new();
        let mut low = Vec::new();
        for &h in &sizes[..atoms] {
            let rate = rng.random_range(0.1..3.0);
            high.push((h, rate));
            if !rng.random_bool(0.2) {
                low.push((h, rate * rng.random_range(0.0..1.0)));
            }
        }
        let (high, low) = (JumpMeasure::new(high), JumpMeasure::new(low));
        let b1 = rng.random_range(-1.0..1.0);
        let b0 = if sigma == 0.0 { b1 } else { b1 - rng.random_range(0.0..1.5) };
        let (mu1, mu0) = (b1 + high.first_moment(), b0 + low.first_moment());
        if mu1 - mu0 < 1e-2 {
            continue;
        }
        let rho = mu0 + rng.random_range(0.05..0.95) * (mu1 - mu0);
        let r = rng.random_range(0.05..4.0);
        let problem = BanditProblem::new(ArmType::new(mu1, sigma, high), ArmType::new(mu0, sigma, low), rho, r);
        if let Ok(valid) = problem.validated() {
            out.push(valid);
        }
    }
    out
}

//! Solves the classic special cases and a mixed jump-diffusion instance and
//! prints the root, cut-offs and value at a few beliefs.

use levy_bandit::fixtures;
use levy_bandit::solver::{solve, DEFAULT_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("exponential (r=1, λ=1)", fixtures::krc(1.0, 1.0, 0.5)),
        ("Brownian (σ=1, μ=±1)", fixtures::bolton_harris(1.0, 1.0, 1.0, -1.0, 0.0)),
        ("Poisson (λ=2 vs 1)", fixtures::kr2010(1.0, 2.0, 1.0, 1.5)),
        ("mixed jump-diffusion", fixtures::mixed()),
    ];
    for (name, problem) in cases {
        let s = solve(&problem.validated()?, DEFAULT_TOL)?;
        println!("{name}");
        println!("  α* = {:.12}  p* = {:.6}  myopic = {:.6}  C = {:.6}", s.alpha_star, s.p_star, s.p_myopic, s.c_alpha);
        for p in [0.25, 0.5, 0.75] {
            println!("  V({p}) = {:.6}", s.value(p)?);
        }
    }
    Ok(())
}

//! Monte Carlo check of the closed-form value on the exponential bandit,
//! comparing the optimal cut-off with nearby and constant strategies.

use levy_bandit::fixtures;
use levy_bandit::simulator::{estimate, SimConfig, Strategy};
use levy_bandit::solver::{solve, DEFAULT_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let problem = fixtures::krc(1.0, 1.0, 0.5).validated()?;
    let s = solve(&problem, DEFAULT_TOL)?;
    let p0 = 2.0 / 3.0;
    let config = SimConfig { paths: 20_000, ..SimConfig::defaults(problem.r(), p0) };
    println!("closed form V({p0:.4}) = {:.5}", s.value(p0)?);
    let strategies = [
        Strategy::Cutoff(s.p_star),
        Strategy::Cutoff(s.p_star - 0.1),
        Strategy::Cutoff(s.p_star + 0.1),
        Strategy::AlwaysRisky,
        Strategy::AlwaysSafe,
    ];
    for st in &strategies {
        let r = estimate(&problem, st, &config)?;
        println!("{:<28} {:.5} ± {:.5}", st.to_string(), r.mean, r.stderr);
    }
    Ok(())
}

//! Sweeps the discount rate and the jump intensity on the mixed instance.

use levy_bandit::fixtures;
use levy_bandit::solver::{monotonicity, sweep, SweepParameter, DEFAULT_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = fixtures::mixed();
    for (param, grid) in [
        (SweepParameter::R, vec![0.25, 0.5, 1.0, 2.0, 4.0]),
        (SweepParameter::JumpScale, vec![0.6, 0.8, 1.0, 1.5, 1.9]),
    ] {
        let rows = sweep(&base, param, &grid, 0.5, DEFAULT_TOL)?;
        println!("{:>10} {:>10} {:>10} {:>10} {:>10}", param.name(), "α*", "p*", "myopic", "V(0.5)");
        for r in &rows {
            println!("{:>10.3} {:>10.5} {:>10.5} {:>10.5} {:>10.5}", r.parameter, r.alpha_star, r.p_star, r.p_myopic, r.value_at_probe);
        }
        println!("{:?}\n", monotonicity(&rows));
    }
    Ok(())
}

//! Filters one simulated path of the mixed instance and prints the
//! posterior trajectory.

use levy_bandit::filter::{init_belief, BeliefFilter, PosteriorFilter};
use levy_bandit::fixtures;
use levy_bandit::simulator::{path_rng, sample_path_step};
use rand::Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let problem = fixtures::mixed().validated()?;
    let filter = PosteriorFilter::new(problem.info());
    let mut rng = path_rng(1, 0);
    let high = rng.random_bool(0.5);
    let arm = if high { &problem.problem().high } else { &problem.problem().low };
    println!("true type: {}", if high { "High" } else { "Low" });

    let dt = 0.01;
    let mut state = init_belief(0.5)?;
    for step in 1..=500 {
        let obs = sample_path_step(arm, dt, &mut rng);
        state = filter.update(state, &obs)?;
        if !obs.jumps.is_empty() || step % 50 == 0 {
            println!("t={:5.2}  jumps={:?}  p={:.4}", step as f64 * dt, obs.jumps, state.probability());
        }
    }
    Ok(())
}

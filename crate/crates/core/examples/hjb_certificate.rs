//! Certifies the closed-form value against the HJB equation on a belief
//! grid: zero residual under the optimal control, non-positive otherwise.

use levy_bandit::cli::{belief_grid_midpoints, hjb_rows};
use levy_bandit::fixtures;
use levy_bandit::solver::{solve, DEFAULT_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = solve(&fixtures::mixed().validated()?, DEFAULT_TOL)?;
    let rows = hjb_rows(&s, &belief_grid_midpoints(1000))?;
    let active = rows.iter().map(|r| r.active().abs()).fold(0.0, f64::max);
    let inactive = rows.iter().map(|r| r.inactive()).fold(f64::NEG_INFINITY, f64::max);
    println!("p* = {:.6}, {} grid points", s.p_star, rows.len());
    println!("max |residual| under the optimal control: {active:.3e}");
    println!("max residual under the other control:     {inactive:.3e}");
    for r in rows.iter().step_by(125) {
        println!("  p={:.4}  κ=0: {:+.3e}  κ=1: {:+.3e}", r.p, r.residual_k0, r.residual_k1);
    }
    Ok(())
}

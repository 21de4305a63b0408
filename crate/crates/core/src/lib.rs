//! Optimal experimentation in a two-armed bandit whose risky arm pays a
//! Lévy process: Brownian noise plus finitely many jump sizes.
//!
//! * [`model`]: arm types, problem validation and derived quantities.
//! * [`solver`]: the root `α*`, the cut-off `p*` and the closed-form value.
//! * [`generator`]: the posterior generator and the HJB residual.
//! * [`filter`]: exact posterior updates from discretized observations.
//! * [`simulator`]: Monte Carlo evaluation of Markov strategies.
//! * [`cli`]: the `levy-bandit` command-line front end.
//! * [`fixtures`]: the classical special cases as ready-made problems.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod filter;
pub mod fixtures;
pub mod generator;
pub mod model;
pub mod simulator;
pub mod solver;

//! Validates the bundled configs and a few hand-built violations.

use levy_bandit::cli::load_problem;
use levy_bandit::model::{ArmType, BanditProblem, DerivedQuantities, JumpMeasure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    for name in ["krc", "bolton_harris", "kr2010", "mixed", "indistinguishable"] {
        let problem = load_problem(&dir.join(format!("{name}.json")))?;
        let report = problem.validate();
        println!("{name}: {}", if report.ok { "valid" } else { "invalid" });
        for f in report.failures() {
            println!("  {:?}: {}", f.assumption, f.reason.as_deref().unwrap_or(""));
        }
        if let Ok(d) = DerivedQuantities::derive(&problem) {
            println!("  β={:.4} mass gap={:.4} snr={:.4} revealing sizes={:?}", d.beta, d.mass_gap, d.snr, d.b_infinity);
        }
    }

    let violations = [
        (
            "Low jumps where High cannot",
            BanditProblem::new(
                ArmType::new(1.0, 0.0, JumpMeasure::new([(1.0, 1.0)])),
                ArmType::new(0.5, 0.0, JumpMeasure::new([(1.0, 0.25), (0.5, 0.5)])),
                0.75,
                1.0,
            ),
        ),
        (
            "different Brownian coefficients",
            BanditProblem::new(
                ArmType::new(1.0, 1.0, JumpMeasure::empty()),
                ArmType::new(0.0, 2.0, JumpMeasure::empty()),
                0.5,
                1.0,
            ),
        ),
    ];
    for (name, problem) in violations {
        println!("{name}:");
        for f in problem.validate().failures() {
            println!("  {:?}: {}", f.assumption, f.reason.as_deref().unwrap_or(""));
        }
    }
    Ok(())
}

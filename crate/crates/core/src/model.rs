//! Two-type Lévy bandit model: arm hypotheses, the safe arm, and the
//! standing assumptions that every other module relies on.
//!
//! Jump measures are finite lists of atoms `(size, rate)`. That keeps every
//! integral against a Lévy measure an exact finite sum and makes the
//! integrability conditions on the measures automatic.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance for comparisons made during validation.
pub const VALIDATION_TOL: f64 = 1e-12;

/// One atom of a discrete Lévy measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(f64, f64)", into = "(f64, f64)")]
pub struct Atom {
    /// Jump size `h`.
    pub size: f64,
    /// Expected number of jumps of this size per unit time.
    pub rate: f64,
}

impl From<(f64, f64)> for Atom {
    fn from((size, rate): (f64, f64)) -> Self {
        Atom { size, rate }
    }
}

impl From<Atom> for (f64, f64) {
    fn from(a: Atom) -> Self {
        (a.size, a.rate)
    }
}

/// A finite discrete Lévy measure, kept sorted by jump size.
///
/// Construction never rejects input; malformed measures (duplicate sizes,
/// zero sizes, negative rates) are reported by [`BanditProblem::validate`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<Atom>", into = "Vec<Atom>")]
pub struct JumpMeasure {
    atoms: Vec<Atom>,
}

impl From<Vec<Atom>> for JumpMeasure {
    fn from(mut atoms: Vec<Atom>) -> Self {
        atoms.sort_by(|a, b| a.size.total_cmp(&b.size));
        JumpMeasure { atoms }
    }
}

impl From<JumpMeasure> for Vec<Atom> {
    fn from(m: JumpMeasure) -> Self {
        m.atoms
    }
}

impl JumpMeasure {
    pub fn new(atoms: impl IntoIterator<Item = (f64, f64)>) -> Self {
        atoms.into_iter().map(Atom::from).collect::<Vec<_>>().into()
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Total mass `ν(ℝ∖{0})`.
    pub fn total_rate(&self) -> f64 {
        self.atoms.iter().map(|a| a.rate).sum()
    }

    /// First moment `∫ h ν(dh)`.
    pub fn first_moment(&self) -> f64 {
        self.atoms.iter().map(|a| a.size * a.rate).sum()
    }

    /// Second moment `∫ h² ν(dh)`.
    pub fn second_moment(&self) -> f64 {
        self.atoms.iter().map(|a| a.size * a.size * a.rate).sum()
    }

    /// Rate of the atom at `size` (within [`VALIDATION_TOL`]), 0 if absent.
    pub fn rate_at(&self, size: f64) -> f64 {
        self.find(size).map_or(0.0, |a| a.rate)
    }

    pub fn find(&self, size: f64) -> Option<&Atom> {
        self.atoms
            .iter()
            .find(|a| (a.size - size).abs() <= VALIDATION_TOL)
    }

    /// Multiplies every rate by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        JumpMeasure {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom { size: a.size, rate: a.rate * factor })
                .collect(),
        }
    }
}

/// One hypothesis for the risky arm: a Lévy process with finite second
/// moment, described by its total expectation rate, Brownian coefficient and
/// jump measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArmType {
    /// Total expectation rate, `E[X(t)] = mu * t`.
    pub mu: f64,
    pub sigma: f64,
    #[serde(default)]
    pub jumps: JumpMeasure,
}

impl ArmType {
    pub fn new(mu: f64, sigma: f64, jumps: JumpMeasure) -> Self {
        ArmType { mu, sigma, jumps }
    }

    /// Drift of the continuous part: `mu - ∫ h ν(dh)`.
    pub fn continuous_drift(&self) -> f64 {
        self.mu - self.jumps.first_moment()
    }

    /// `E[X(1)²]` as used by the square-integrability assumption.
    pub fn second_moment(&self) -> f64 {
        self.mu * self.mu + self.sigma * self.sigma + self.jumps.second_moment()
    }

    /// Variance rate of the increments: `σ² + ∫ h² ν(dh)`.
    pub fn variance_rate(&self) -> f64 {
        self.sigma * self.sigma + self.jumps.second_moment()
    }
}

/// The two-armed bandit: High and Low hypotheses for the risky arm, the
/// safe arm's flow payoff `rho` and the discount rate `r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BanditProblem {
    pub high: ArmType,
    pub low: ArmType,
    pub rho: f64,
    pub r: f64,
}

/// The individual conditions checked by [`BanditProblem::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Assumption {
    /// Finite numbers, `r > 0`, `sigma >= 0`, well-formed jump measures.
    Structure,
    /// Finite second moment of both hypotheses.
    A1,
    /// A single Brownian coefficient shared by both hypotheses.
    A2,
    /// Finite difference of total jump intensities.
    A3,
    /// Finite difference of jump first moments.
    A4,
    /// `mu_low < rho < mu_high`.
    A5,
    /// Low jump measure dominated by the High one, atom by atom.
    A6,
    /// Without a Brownian part the continuous drifts must coincide.
    DriftMatch,
}

impl Assumption {
    pub const ALL: [Assumption; 8] = [
        Assumption::Structure,
        Assumption::A1,
        Assumption::A2,
        Assumption::A3,
        Assumption::A4,
        Assumption::A5,
        Assumption::A6,
        Assumption::DriftMatch,
    ];

    pub fn description(self) -> &'static str {
        match self {
            Assumption::Structure => "well-formed parameters",
            Assumption::A1 => "finite second moments",
            Assumption::A2 => "common Brownian coefficient",
            Assumption::A3 => "finite jump-intensity gap",
            Assumption::A4 => "finite jump first-moment gap",
            Assumption::A5 => "mu_low < rho < mu_high",
            Assumption::A6 => "low jump measure dominated by high",
            Assumption::DriftMatch => "equal continuous drifts when sigma = 0",
        }
    }
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub assumption: Assumption,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Outcome of [`BanditProblem::validate`]: one entry per [`Assumption`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    fn from_checks(checks: Vec<CheckResult>) -> Self {
        let ok = checks.iter().all(|c| c.passed);
        ValidationReport { ok, checks }
    }

    pub fn passed(&self, assumption: Assumption) -> bool {
        self.checks
            .iter()
            .find(|c| c.assumption == assumption)
            .is_some_and(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Everything except the payoff ordering passes.
    pub fn information_ok(&self) -> bool {
        self.failures().all(|c| c.assumption == Assumption::A5)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(f, "{:<10} {:<4} {}", c.assumption.to_string(), status, c.assumption.description())?;
            if let Some(reason) = &c.reason {
                write!(f, ": {reason}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.ok { "all assumptions hold" } else { "assumptions violated" })
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid problem: {}", summarize(.0))]
    Invalid(ValidationReport),
}

fn summarize(report: &ValidationReport) -> String {
    report
        .failures()
        .map(|c| match &c.reason {
            Some(r) => format!("{} ({r})", c.assumption),
            None => c.assumption.to_string(),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn check(assumption: Assumption, failures: Vec<String>) -> CheckResult {
    CheckResult {
        assumption,
        passed: failures.is_empty(),
        reason: (!failures.is_empty()).then(|| failures.join("; ")),
    }
}

fn measure_issues(name: &str, m: &JumpMeasure, allow_zero_rates: bool) -> Vec<String> {
    let mut out = Vec::new();
    for a in m.atoms() {
        if !a.size.is_finite() || !a.rate.is_finite() {
            out.push(format!("{name} atom ({}, {}) is not finite", a.size, a.rate));
            continue;
        }
        if a.size.abs() <= VALIDATION_TOL {
            out.push(format!("{name} has an atom at jump size 0"));
        }
        if a.rate < 0.0 {
            out.push(format!("{name} atom at {} has negative rate {}", a.size, a.rate));
        } else if a.rate == 0.0 && !allow_zero_rates {
            out.push(format!("{name} atom at {} has zero rate", a.size));
        }
    }
    for w in m.atoms().windows(2) {
        if (w[1].size - w[0].size).abs() <= VALIDATION_TOL {
            out.push(format!("{name} lists jump size {} twice", w[0].size));
        }
    }
    out
}

impl BanditProblem {
    pub fn new(high: ArmType, low: ArmType, rho: f64, r: f64) -> Self {
        BanditProblem { high, low, rho, r }
    }

    /// Checks every standing assumption. Never fails; failures are listed in
    /// the report with a reason.
    pub fn validate(&self) -> ValidationReport {
        let (hi, lo) = (&self.high, &self.low);
        let mut checks = Vec::with_capacity(Assumption::ALL.len());

        let mut structure = Vec::new();
        for (name, v) in [
            ("high.mu", hi.mu),
            ("high.sigma", hi.sigma),
            ("low.mu", lo.mu),
            ("low.sigma", lo.sigma),
            ("rho", self.rho),
            ("r", self.r),
        ] {
            if !v.is_finite() {
                structure.push(format!("{name} is not finite"));
            }
        }
        if self.r.is_finite() && self.r <= 0.0 {
            structure.push(format!("discount rate r = {} must be positive", self.r));
        }
        for (name, s) in [("high.sigma", hi.sigma), ("low.sigma", lo.sigma)] {
            if s < 0.0 {
                structure.push(format!("{name} = {s} is negative"));
            }
        }
        structure.extend(measure_issues("high.jumps", &hi.jumps, false));
        structure.extend(measure_issues("low.jumps", &lo.jumps, true));
        checks.push(check(Assumption::Structure, structure));

        let a1 = [("high", hi), ("low", lo)]
            .into_iter()
            .filter(|(_, arm)| !arm.second_moment().is_finite())
            .map(|(name, _)| format!("{name} arm has infinite second moment"))
            .collect();
        checks.push(check(Assumption::A1, a1));

        let mut a2 = Vec::new();
        if !((hi.sigma - lo.sigma).abs() <= VALIDATION_TOL) {
            a2.push(format!("high.sigma = {} differs from low.sigma = {}", hi.sigma, lo.sigma));
        }
        checks.push(check(Assumption::A2, a2));

        let mut a3 = Vec::new();
        let gap = hi.jumps.total_rate() - lo.jumps.total_rate();
        if !gap.is_finite() {
            a3.push("jump intensity gap is not finite".to_string());
        }
        checks.push(check(Assumption::A3, a3));

        let mut a4 = Vec::new();
        let moment_gap = hi.jumps.first_moment() - lo.jumps.first_moment();
        if !moment_gap.is_finite() {
            a4.push("jump first-moment gap is not finite".to_string());
        }
        checks.push(check(Assumption::A4, a4));

        let mut a5 = Vec::new();
        if !(lo.mu + VALIDATION_TOL < self.rho && self.rho < hi.mu - VALIDATION_TOL) {
            a5.push(format!(
                "need mu_low < rho < mu_high, got {} < {} < {}",
                lo.mu, self.rho, hi.mu
            ));
        }
        checks.push(check(Assumption::A5, a5));

        let mut a6 = Vec::new();
        for a in lo.jumps.atoms().iter().filter(|a| a.rate > 0.0) {
            match hi.jumps.find(a.size) {
                None => a6.push(format!(
                    "low jump size {} is outside the support of the high measure",
                    a.size
                )),
                Some(h) if a.rate > h.rate + VALIDATION_TOL => a6.push(format!(
                    "at jump size {} the low rate {} exceeds the high rate {}",
                    a.size, a.rate, h.rate
                )),
                Some(_) => {}
            }
        }
        checks.push(check(Assumption::A6, a6));

        let mut drift = Vec::new();
        if hi.sigma == 0.0 || lo.sigma == 0.0 {
            let (b1, b0) = (hi.continuous_drift(), lo.continuous_drift());
            let scale = 1f64.max(b1.abs()).max(b0.abs());
            if !((b1 - b0).abs() <= VALIDATION_TOL * scale) {
                drift.push(format!(
                    "sigma = 0 but continuous drifts differ ({b1} vs {b0}); the type would be revealed instantly"
                ));
            }
        }
        checks.push(check(Assumption::DriftMatch, drift));

        ValidationReport::from_checks(checks)
    }

    /// Validates and wraps the problem.
    pub fn validated(self) -> Result<ValidProblem, ModelError> {
        ValidProblem::new(self)
    }
}

/// A jump size in the support of the High measure together with both rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomPair {
    pub size: f64,
    pub high_rate: f64,
    pub low_rate: f64,
}

impl AtomPair {
    /// Jumps of this size can only come from the High type.
    pub fn reveals_high(&self) -> bool {
        self.low_rate == 0.0
    }

    /// `ln(ν₁({h}) / ν₀({h}))`, `+∞` for revealing atoms.
    pub fn log_ratio(&self) -> f64 {
        if self.reveals_high() {
            f64::INFINITY
        } else {
            (self.high_rate / self.low_rate).ln()
        }
    }
}

/// Signal quantities shared by the filter, the generator and the root
/// function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DerivedQuantities {
    /// `(b₀ - b₁) / σ²`, 0 without a Brownian part.
    pub beta: f64,
    /// `ν̄₁ - ν̄₀`, the total jump-intensity gap.
    pub mass_gap: f64,
    /// Brownian signal-to-noise `β²σ² = ((b₁ - b₀)/σ)²`, 0 without a
    /// Brownian part.
    pub snr: f64,
    /// Jump sizes only the High type produces.
    pub b_infinity: Vec<f64>,
}

impl DerivedQuantities {
    /// Computes the signal quantities. Requires every check except the
    /// payoff ordering to pass.
    pub fn derive(problem: &BanditProblem) -> Result<Self, ModelError> {
        InformationModel::new(problem).map(|m| m.derived().clone())
    }
}

/// The part of a problem that governs learning: how observations separate
/// the two types. Requires every assumption except the payoff ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct InformationModel {
    r: f64,
    sigma: f64,
    high_drift: f64,
    low_drift: f64,
    atoms: Vec<AtomPair>,
    derived: DerivedQuantities,
}

impl InformationModel {
    pub fn new(problem: &BanditProblem) -> Result<Self, ModelError> {
        let report = problem.validate();
        if !report.information_ok() {
            return Err(ModelError::Invalid(report));
        }
        Ok(Self::build(problem))
    }

    fn build(problem: &BanditProblem) -> Self {
        let sigma = problem.high.sigma;
        let high_drift = problem.high.continuous_drift();
        let low_drift = problem.low.continuous_drift();
        let atoms: Vec<AtomPair> = problem
            .high
            .jumps
            .atoms()
            .iter()
            .map(|a| AtomPair {
                size: a.size,
                high_rate: a.rate,
                low_rate: problem.low.jumps.rate_at(a.size),
            })
            .collect();
        let mass_gap = atoms.iter().fold(0.0, |acc, a| acc + (a.high_rate - a.low_rate));
        let (beta, snr) = if sigma > 0.0 {
            let beta = (low_drift - high_drift) / (sigma * sigma);
            (beta, beta * beta * sigma * sigma)
        } else {
            (0.0, 0.0)
        };
        let b_infinity = atoms.iter().filter(|a| a.reveals_high()).map(|a| a.size).collect();
        InformationModel {
            r: problem.r,
            sigma,
            high_drift,
            low_drift,
            atoms,
            derived: DerivedQuantities { beta, mass_gap, snr, b_infinity },
        }
    }

    pub fn derived(&self) -> &DerivedQuantities {
        &self.derived
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn high_drift(&self) -> f64 {
        self.high_drift
    }

    pub fn low_drift(&self) -> f64 {
        self.low_drift
    }

    /// Atoms of the High measure (which contains the Low support).
    pub fn atoms(&self) -> &[AtomPair] {
        &self.atoms
    }

    pub fn atom(&self, size: f64) -> Option<&AtomPair> {
        self.atoms
            .iter()
            .find(|a| (a.size - size).abs() <= VALIDATION_TOL)
    }

    /// Observations can separate the types at all.
    pub fn has_signal(&self) -> bool {
        self.derived.snr > 0.0 || self.derived.mass_gap > 0.0
    }
}

/// A problem for which every assumption holds.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidProblem {
    problem: BanditProblem,
    info: InformationModel,
}

impl ValidProblem {
    pub fn new(problem: BanditProblem) -> Result<Self, ModelError> {
        let report = problem.validate();
        if !report.ok {
            return Err(ModelError::Invalid(report));
        }
        let info = InformationModel::build(&problem);
        Ok(ValidProblem { problem, info })
    }

    pub fn problem(&self) -> &BanditProblem {
        &self.problem
    }

    pub fn info(&self) -> &InformationModel {
        &self.info
    }

    pub fn rho(&self) -> f64 {
        self.problem.rho
    }

    pub fn r(&self) -> f64 {
        self.problem.r
    }

    pub fn mu_high(&self) -> f64 {
        self.problem.high.mu
    }

    pub fn mu_low(&self) -> f64 {
        self.problem.low.mu
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn krc_passes_every_assumption() {
        let report = fixtures::krc(1.0, 1.0, 0.5).validate();
        assert!(report.ok, "{report}");
        assert_eq!(report.checks.len(), Assumption::ALL.len());
    }

    #[test]
    fn rho_above_high_mean_fails_a5_only() {
        let report = fixtures::krc(1.0, 1.0, 2.0).validate();
        assert!(!report.ok);
        let failed: Vec<_> = report.failures().map(|c| c.assumption).collect();
        assert_eq!(failed, vec![Assumption::A5]);
        assert!(report.information_ok());
    }

    #[test]
    fn low_rate_above_high_rate_fails_a6() {
        let p = BanditProblem::new(
            ArmType::new(1.0, 0.0, JumpMeasure::new([(1.0, 1.0)])),
            ArmType::new(2.0, 0.0, JumpMeasure::new([(1.0, 2.0)])),
            0.5,
            1.0,
        );
        let report = p.validate();
        assert!(!report.passed(Assumption::A6));
        assert!(report.checks.iter().any(|c| c.assumption == Assumption::A6
            && c.reason.as_deref().unwrap().contains("exceeds")));
    }

    #[test]
    fn low_atom_outside_high_support_fails_a6() {
        let p = BanditProblem::new(
            ArmType::new(1.0, 0.0, JumpMeasure::new([(1.0, 1.0)])),
            ArmType::new(0.5, 0.0, JumpMeasure::new([(0.5, 1.0)])),
            0.75,
            1.0,
        );
        assert!(!p.validate().passed(Assumption::A6));
    }

    #[test]
    fn structural_problems_are_reported() {
        let p = BanditProblem::new(
            ArmType::new(1.0, 0.0, JumpMeasure::new([(1.0, 1.0), (1.0, 2.0), (0.0, 1.0)])),
            ArmType::new(0.0, -1.0, JumpMeasure::new([(1.0, -1.0)])),
            0.5,
            0.0,
        );
        let report = p.validate();
        assert!(!report.passed(Assumption::Structure));
        let reason = report.checks[0].reason.clone().unwrap();
        for needle in ["twice", "jump size 0", "negative", "must be positive"] {
            assert!(reason.contains(needle), "missing {needle:?} in {reason}");
        }
    }

    #[test]
    fn zero_rate_in_high_measure_is_rejected_but_allowed_in_low() {
        let mut p = fixtures::krc(1.0, 1.0, 0.5);
        p.low.jumps = JumpMeasure::new([(1.0, 0.0)]);
        assert!(p.validate().ok);
        p.high.jumps = JumpMeasure::new([(1.0, 1.0), (2.0, 0.0)]);
        assert!(!p.validate().passed(Assumption::Structure));
    }

    #[test]
    fn differing_sigmas_fail_a2() {
        let mut p = fixtures::bolton_harris(1.0, 1.0, 1.0, -1.0, 0.0);
        p.low.sigma = 0.5;
        assert!(!p.validate().passed(Assumption::A2));
    }

    #[test]
    fn sigma_zero_requires_matching_drifts() {
        let mut p = fixtures::krc(1.0, 1.0, 0.5);
        p.high.mu = 1.5;
        let report = p.validate();
        assert!(!report.passed(Assumption::DriftMatch));
        assert!(report.passed(Assumption::A5));
    }

    #[test]
    fn nan_inputs_fail_structure() {
        let mut p = fixtures::krc(1.0, 1.0, 0.5);
        p.rho = f64::NAN;
        let report = p.validate();
        assert!(!report.passed(Assumption::Structure));
        assert!(!report.passed(Assumption::A5));
    }

    #[test]
    fn bolton_harris_derived_quantities() {
        let d = DerivedQuantities::derive(&fixtures::bolton_harris(1.0, 1.0, 1.0, -1.0, 0.0)).unwrap();
        assert_eq!(d.beta, -2.0);
        assert_eq!(d.mass_gap, 0.0);
        assert_eq!(d.snr, 4.0);
        assert!(d.b_infinity.is_empty());
    }

    #[test]
    fn krc_derived_quantities() {
        let d = DerivedQuantities::derive(&fixtures::krc(1.0, 1.0, 0.5)).unwrap();
        assert_eq!(d.mass_gap, 1.0);
        assert_eq!(d.b_infinity, vec![1.0]);
        assert_eq!(d.beta, 0.0);
        assert_eq!(d.snr, 0.0);
    }

    #[test]
    fn degenerate_identical_types_derive_to_zero() {
        let d = DerivedQuantities::derive(&fixtures::indistinguishable()).unwrap();
        assert_eq!(d.beta, 0.0);
        assert_eq!(d.mass_gap, 0.0);
        assert_eq!(d.snr, 0.0);
    }

    #[test]
    fn derive_rejects_invalid_problem() {
        let mut p = fixtures::krc(1.0, 1.0, 0.5);
        p.low.jumps = JumpMeasure::new([(1.0, 3.0)]);
        assert!(matches!(DerivedQuantities::derive(&p), Err(ModelError::Invalid(_))));
    }

    #[test]
    fn drifts_reconstruct_total_means() {
        let p = fixtures::mixed();
        for arm in [&p.high, &p.low] {
            let back = arm.continuous_drift() + arm.jumps.first_moment();
            assert!((back - arm.mu).abs() <= 1e-15);
        }
    }

    #[test]
    fn json_schema_round_trip() {
        let text = r#"{"high": {"mu": 1.0, "sigma": 0.0, "jumps": [[1.0, 1.0]]},
                       "low": {"mu": 0.0, "sigma": 0.0, "jumps": []}, "rho": 0.5, "r": 1.0}"#;
        let p: BanditProblem = serde_json::from_str(text).unwrap();
        assert_eq!(p, fixtures::krc(1.0, 1.0, 0.5));
        let back: BanditProblem = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn json_requires_sigma_in_both_arms() {
        let text = r#"{"high": {"mu": 1.0, "jumps": [[1.0, 1.0]]},
                       "low": {"mu": 0.0, "sigma": 0.0}, "rho": 0.5, "r": 1.0}"#;
        let err = serde_json::from_str::<BanditProblem>(text).unwrap_err();
        assert!(err.to_string().contains("sigma"));
    }
}

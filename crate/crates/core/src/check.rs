//! Outcomes of theorem checks and how much of the search space they covered.

use std::fmt;

use serde::Serialize;

/// Result of evaluating one conditional statement on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail { witness: String },
    /// The statement's hypotheses do not hold here, so the conclusion was not evaluated.
    HypothesisNotMet { unmet: Vec<String> },
}

/// How the quantifiers of a check were discharged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Coverage {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
    /// A fixed hand-picked family of instances (used above the exhaustive caps).
    Curated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    #[serde(flatten)]
    pub outcome: Outcome,
    /// Number of quantifier instances examined.
    pub cases: u64,
    pub coverage: Coverage,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>, cases: u64) -> Self {
        CheckResult {
            name: name.into(),
            outcome: Outcome::Pass,
            cases,
            coverage: Coverage::Exhaustive,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            outcome: Outcome::Fail {
                witness: witness.into(),
            },
            cases: 0,
            coverage: Coverage::Exhaustive,
        }
    }

    pub fn unmet(name: impl Into<String>, unmet: Vec<String>) -> Self {
        CheckResult {
            name: name.into(),
            outcome: Outcome::HypothesisNotMet { unmet },
            cases: 0,
            coverage: Coverage::Exhaustive,
        }
    }

    /// Pass if `failure` is `None`, otherwise fail with the given witness.
    pub fn from_search(name: impl Into<String>, cases: u64, failure: Option<String>) -> Self {
        match failure {
            None => Self::pass(name, cases),
            Some(w) => {
                let mut r = Self::fail(name, w);
                r.cases = cases;
                r
            }
        }
    }

    pub fn with_coverage(mut self, coverage: Coverage) -> Self {
        self.coverage = coverage;
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn failed(&self) -> bool {
        matches!(self.outcome, Outcome::Fail { .. })
    }

    pub fn hypothesis_not_met(&self) -> bool {
        matches!(self.outcome, Outcome::HypothesisNotMet { .. })
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass => write!(f, "{}: pass ({} cases)", self.name, self.cases),
            Outcome::Fail { witness } => write!(f, "{}: FAIL at {witness}", self.name),
            Outcome::HypothesisNotMet { unmet } => {
                write!(f, "{}: hypotheses not met ({})", self.name, unmet.join(", "))
            }
        }
    }
}

/// Knobs shared by the family-level checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    /// Random samples drawn when a family is too large to sweep.
    pub samples: usize,
    pub seed: u64,
    /// Largest carrier for which subset families are swept exhaustively.
    pub exhaustive_cap: usize,
    /// Bound on the number of closed sets in any lattice built along the way.
    pub lattice_cap: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            samples: 48,
            seed: 0,
            exhaustive_cap: 12,
            lattice_cap: 100_000,
        }
    }
}

impl CheckConfig {
    pub fn is_exhaustive(&self, n: usize) -> bool {
        n <= self.exhaustive_cap
    }

    pub fn coverage(&self, n: usize) -> Coverage {
        if self.is_exhaustive(n) {
            Coverage::Exhaustive
        } else {
            Coverage::Curated
        }
    }
}

/// Counts cases and keeps the first failure.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub cases: u64,
    pub failure: Option<String>,
}

impl Tally {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one case; `ok == false` stores the witness if none is stored yet.
    pub fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    pub fn finish(self, name: impl Into<String>) -> CheckResult {
        CheckResult::from_search(name, self.cases, self.failure)
    }
}

/// Collapses several results into the worst one (fail beats unmet beats pass).
pub fn combine(name: impl Into<String>, parts: &[CheckResult]) -> CheckResult {
    let name = name.into();
    let cases = parts.iter().map(|p| p.cases).sum();
    if let Some(f) = parts.iter().find(|p| p.failed()) {
        let Outcome::Fail { witness } = &f.outcome else { unreachable!() };
        let mut r = CheckResult::fail(name, format!("{}: {witness}", f.name));
        r.cases = cases;
        return r;
    }
    let unmet: Vec<String> = parts
        .iter()
        .filter_map(|p| match &p.outcome {
            Outcome::HypothesisNotMet { unmet } => Some(format!("{}: {}", p.name, unmet.join(", "))),
            _ => None,
        })
        .collect();
    if !unmet.is_empty() && unmet.len() == parts.len() {
        return CheckResult::unmet(name, unmet);
    }
    CheckResult::pass(name, cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_keeps_first_failure() {
        let mut t = Tally::new();
        t.case(true, || "a".into());
        t.case(false, || "b".into());
        t.case(false, || "c".into());
        let r = t.finish("x");
        assert_eq!(r.cases, 3);
        assert_eq!(r.outcome, Outcome::Fail { witness: "b".into() });
    }

    #[test]
    fn combine_ranks_outcomes() {
        let p = CheckResult::pass("p", 2);
        let u = CheckResult::unmet("u", vec!["h".into()]);
        let f = CheckResult::fail("f", "w");
        assert!(combine("all", &[p.clone(), u.clone()]).passed());
        assert!(combine("all", &[u.clone()]).hypothesis_not_met());
        assert!(combine("all", &[p, u, f]).failed());
    }

    #[test]
    fn serializes_flat() {
        let r = CheckResult::fail("x", "w");
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "fail");
        assert_eq!(v["witness"], "w");
        assert_eq!(v["coverage"]["kind"], "exhaustive");
    }
}

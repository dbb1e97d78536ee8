//! Law-suite reports: one entry per law, with the checking regime and a
//! counterexample witness on failure.

use serde::{Deserialize, Serialize};

/// How the quantifiers of a law were discharged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Regime {
    /// Every instance of the quantified variables was enumerated.
    Exhaustive,
    /// A seeded pseudo-random sample was checked.
    Sampled { seed: u64, count: usize },
}

/// Outcome of checking a single law.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LawResult {
    /// Stable identifier, e.g. `effectus.truth-cotuple`.
    pub id: String,
    /// Human-readable statement of the law.
    pub statement: String,
    pub regime: Regime,
    /// Number of individual checks performed.
    pub checks: usize,
    pub passed: bool,
    /// Counterexample description when `passed` is false.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl LawResult {
    pub fn new(id: &str, statement: &str, regime: Regime) -> Self {
        LawResult {
            id: id.to_string(),
            statement: statement.to_string(),
            regime,
            checks: 0,
            passed: true,
            witness: None,
        }
    }

    /// Records the outcomes of a batch of checks; the first failure wins.
    pub fn absorb(&mut self, outcomes: Vec<Option<String>>) -> &mut Self {
        self.checks += outcomes.len();
        if self.passed {
            if let Some(w) = outcomes.into_iter().flatten().next() {
                self.passed = false;
                self.witness = Some(w);
            }
        }
        self
    }

    pub fn fail(&mut self, witness: String) -> &mut Self {
        self.checks += 1;
        if self.passed {
            self.passed = false;
            self.witness = Some(witness);
        }
        self
    }

    pub fn pass_one(&mut self) -> &mut Self {
        self.checks += 1;
        self
    }
}

/// A named collection of law results.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LawReport {
    pub suite: String,
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn new(suite: &str) -> Self {
        LawReport {
            suite: suite.to_string(),
            laws: Vec::new(),
        }
    }

    pub fn push(&mut self, law: LawResult) {
        self.laws.push(law);
    }

    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.laws.iter().filter(|l| !l.passed)
    }

    pub fn merge(&mut self, other: LawReport) {
        self.laws.extend(other.laws);
    }
}

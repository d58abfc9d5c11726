//! Validation certificates: every structural axiom a validator checks becomes
//! a named record with a pass flag and, on failure, the offending basis tuple.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

/// One checked law, e.g. "graded-jacobi", with an optional failure witness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub law: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(law: &str) -> Self {
        Check { law: law.to_string(), passed: true, witness: None }
    }

    pub fn fail(law: &str, witness: String) -> Self {
        Check { law: law.to_string(), passed: false, witness: Some(witness) }
    }
}

/// The full validation record for one object.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Certificate {
    pub fn new(subject: impl Into<String>) -> Self {
        Certificate { subject: subject.into(), checks: Vec::new() }
    }

    pub fn record(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Records a law checked over many tuples: passes when `failures` is
    /// empty, otherwise keeps the first witnesses (at most three).
    pub fn record_law(&mut self, law: &str, mut failures: Vec<String>) {
        if failures.is_empty() {
            self.record(Check::pass(law));
        } else {
            failures.truncate(3);
            self.record(Check::fail(law, failures.join("; ")));
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Converts a failed certificate into an error; `Ok` when everything passed.
    pub fn into_result(self) -> Result<Certificate, CoreError> {
        if self.passed() {
            Ok(self)
        } else {
            let first = self
                .failures()
                .next()
                .map(|c| {
                    format!("{}: {}", c.law, c.witness.as_deref().unwrap_or("no witness"))
                })
                .unwrap_or_default();
            Err(CoreError::Invalid { subject: self.subject, first_failure: first })
        }
    }

    pub fn summary(&self) -> String {
        let failed: Vec<&str> = self.failures().map(|c| c.law.as_str()).collect();
        if failed.is_empty() {
            format!("{}: all {} checks passed", self.subject, self.checks.len())
        } else {
            format!("{}: FAILED [{}]", self.subject, failed.join(", "))
        }
    }
}

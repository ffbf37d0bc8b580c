//! Verification reports: an ordered list of named checks with pass/fail/skip
//! status, an anchor tag identifying the statement being checked, and an
//! optional witness string for auditing.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Condition does not apply at this level (e.g. a parity-conditional claim).
    Skipped,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    pub status: Status,
    pub anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Records a boolean outcome.
    pub fn record(&mut self, name: &str, anchor: &str, ok: bool, witness: Option<String>) {
        self.checks.push(Check {
            check: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            anchor: anchor.to_string(),
            witness,
            elapsed_ms: 0,
        });
    }

    pub fn skip(&mut self, name: &str, anchor: &str, reason: &str) {
        self.checks.push(Check {
            check: name.to_string(),
            status: Status::Skipped,
            anchor: anchor.to_string(),
            witness: Some(reason.to_string()),
            elapsed_ms: 0,
        });
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// Pass iff every non-skipped check passes.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }
}

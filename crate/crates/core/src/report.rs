//! Machine-readable reports for the verification suites.
//!
//! Schema: `{version, config, checks: [{id, paper_ref, status, witness?,
//! millis}]}`. Check ids are stable machine names; `paper_ref` carries the
//! identifier of the statement the check verifies, so CI output maps
//! one-to-one onto the source material.

use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub paper_ref: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub millis: u128,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub config: serde_json::Value,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(config: serde_json::Value, mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            checks,
        }
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }
}

/// Runs one named check, timing it and capturing the failure witness.
pub fn run_check(
    id: impl Into<String>,
    paper_ref: impl Into<String>,
    body: impl FnOnce() -> Result<(), String>,
) -> CheckResult {
    let start = Instant::now();
    let outcome = body();
    let millis = start.elapsed().as_millis();
    match outcome {
        Ok(()) => CheckResult {
            id: id.into(),
            paper_ref: paper_ref.into(),
            status: Status::Pass,
            witness: None,
            millis,
        },
        Err(witness) => CheckResult {
            id: id.into(),
            paper_ref: paper_ref.into(),
            status: Status::Fail,
            witness: Some(witness),
            millis,
        },
    }
}

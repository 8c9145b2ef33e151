//! Named verification suites over the finite-set models, producing
//! [`crate::report`] check lists.

use crate::report::CheckResult;
use serde::Serialize;

pub mod bijections;
pub mod csystem;
pub mod functoriality;
pub mod lcc;
pub mod pi_lambda_suite;
pub mod prestn;
pub mod universe;
pub mod util;

/// Configuration shared by the suites.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    /// Largest universe size parameter the model sweeps run at (`1..=n`).
    pub finskel_n: usize,
    /// Object cap of the ambient finite-set instance.
    pub cap: usize,
    /// Tower length bound for C-system enumerations.
    pub length_bound: usize,
    /// Seed for the sampled portions of the suites.
    pub seed: u64,
    /// Fault injections to apply (for example `P'`).
    pub perturb: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            finskel_n: 2,
            cap: 256,
            length_bound: 2,
            seed: 0,
            perturb: Vec::new(),
        }
    }
}

impl SuiteConfig {
    pub fn perturbs(&self, target: &str) -> bool {
        self.perturb.iter().any(|p| p == target)
    }
}

/// The fixed suite registry.
pub const SUITE_IDS: &[&str] = &[
    "lcc",
    "universe",
    "csystem",
    "u-bijections",
    "pi-lambda-roundtrip",
    "construction-3.17",
    "functoriality",
    "prestn",
];

/// Runs one suite by id. `None` for unknown ids.
pub fn run_suite(id: &str, config: &SuiteConfig) -> Option<Vec<CheckResult>> {
    match id {
        "lcc" => Some(lcc::run(config)),
        "universe" => Some(universe::run(config)),
        "csystem" => Some(csystem::run(config)),
        "u-bijections" => Some(bijections::run(config)),
        "pi-lambda-roundtrip" => Some(pi_lambda_suite::run_roundtrip(config)),
        "construction-3.17" => Some(pi_lambda_suite::run_construction(config)),
        "functoriality" => Some(functoriality::run(config)),
        "prestn" => Some(prestn::run(config)),
        _ => None,
    }
}

/// Runs every suite in the registry.
pub fn run_all(config: &SuiteConfig) -> Vec<CheckResult> {
    SUITE_IDS
        .iter()
        .flat_map(|id| run_suite(id, config).expect("registry ids are valid"))
        .collect()
}

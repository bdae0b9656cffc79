//! Seeded, reproducible property suites: the executable counterpart of the
//! algebra's laws. Each suite draws randomized instances from a deterministic
//! generator and reports per-check pass/fail/inconclusive counts.

mod gen;
mod laws;
mod semantics;

pub use gen::{gen_nat_program, gen_value_of_type, Rng};
pub use laws::transport_bruteforce;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// Outcome counters for one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

impl CheckResult {
    pub fn new(name: &str) -> CheckResult {
        CheckResult { name: name.to_string(), passed: 0, failed: 0, inconclusive: 0 }
    }

    pub fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn total(&self) -> usize {
        self.passed + self.failed + self.inconclusive
    }
}

/// A suite's full report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(CheckResult::ok)
    }

    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let status = if c.ok() { "pass" } else { "FAIL" };
                if c.inconclusive > 0 {
                    format!(
                        "{}/{}: {status} ({} passed, {} failed, {} inconclusive)",
                        self.suite, c.name, c.passed, c.failed, c.inconclusive
                    )
                } else {
                    format!("{}/{}: {status} ({} passed, {} failed)", self.suite, c.name, c.passed, c.failed)
                }
            })
            .collect()
    }
}

/// The suites runnable from the CLI; `all` runs every one of them.
pub const SUITE_NAMES: &[&str] = &[
    "quantale",
    "syntax",
    "typing",
    "effects",
    "evaluation",
    "transport",
    "relators",
    "strong-relators",
    "sigma",
    "distance",
    "adequacy",
    "kernel",
    "compat",
    "metric",
];

/// Runs one suite by name with the given seed and instance scale
/// (1 = acceptance scale).
pub fn run_suite(name: &str, seed: u64, scale: u32) -> crate::Result<SuiteReport> {
    match name {
        "quantale" => Ok(laws::quantale_suite(seed, scale)),
        "syntax" => Ok(semantics::syntax_suite(seed, scale)),
        "typing" => Ok(semantics::typing_suite(seed, scale)),
        "effects" => Ok(semantics::effects_suite(seed, scale)),
        "evaluation" => Ok(semantics::evaluation_suite(seed, scale)),
        "transport" => Ok(laws::transport_suite(seed, scale)),
        "relators" => Ok(laws::relator_suite(seed, scale)),
        "strong-relators" => Ok(laws::strong_relator_suite(seed, scale)),
        "sigma" => Ok(laws::sigma_suite(seed, scale)),
        "distance" => Ok(semantics::distance_suite(seed, scale)),
        "adequacy" => Ok(semantics::adequacy_suite(seed, scale)),
        "kernel" => Ok(semantics::kernel_suite(seed, scale)),
        "compat" => Ok(semantics::compat_suite(seed, scale)),
        "metric" => Ok(semantics::metric_suite(seed, scale)),
        other => Err(crate::Error::InvalidConfig(format!("unknown suite '{other}'"))),
    }
}

/// Runs every suite.
pub fn run_all(seed: u64, scale: u32) -> crate::Result<Vec<SuiteReport>> {
    SUITE_NAMES.iter().map(|name| run_suite(name, seed, scale)).collect()
}

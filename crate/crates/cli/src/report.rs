use serde::Serialize;

use crate::config::{RunConfig, Suite};

/// A checked identity that did not hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub input: String,
    /// What was left over, in the same text format the library parses.
    pub residual: String,
}

/// A case where the tool itself reported an inconsistency.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inconsistency {
    pub input: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub inconsistencies: Vec<Inconsistency>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.inconsistencies.is_empty()
    }
}

/// The reproducible part of a run: identical configs give identical bodies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteTiming {
    pub suite: Suite,
    pub wall_seconds: f64,
}

/// Wall-clock times, kept apart from the report body.
#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub jobs: usize,
    pub wall_seconds: f64,
    pub suites: Vec<SuiteTiming>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunOutcome {
    pub report: VerificationReport,
    pub timing: Timing,
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

impl VerificationReport {
    pub fn failure_count(&self) -> usize {
        self.suites.iter().map(|s| s.failures.len()).sum()
    }

    pub fn inconsistency_count(&self) -> usize {
        self.suites.iter().map(|s| s.inconsistencies.len()).sum()
    }

    /// Inconsistencies take precedence over ordinary failures.
    pub fn exit_code(&self) -> i32 {
        if self.inconsistency_count() > 0 {
            EXIT_INCONSISTENT
        } else if self.failure_count() > 0 {
            EXIT_FAILURE
        } else {
            EXIT_PASS
        }
    }

    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn suite(&self, suite: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == suite)
    }
}

impl RunOutcome {
    /// `{"report": ..., "timing": ...}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("outcome serializes")
    }
}

//! Outcome of a single exact check.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepStatus {
    Pass,
    /// Carries the exact witness of failure, e.g. a nonzero residual.
    Fail(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationStep {
    pub name: String,
    pub status: StepStatus,
    /// The mathematical statement being checked.
    pub citation: String,
    /// Values computed along the way, in display order.
    pub details: Vec<(String, String)>,
}

impl VerificationStep {
    pub fn new(name: impl Into<String>, citation: impl Into<String>, status: StepStatus) -> Self {
        VerificationStep {
            name: name.into(),
            status,
            citation: citation.into(),
            details: Vec::new(),
        }
    }

    pub fn pass(name: impl Into<String>, citation: impl Into<String>) -> Self {
        Self::new(name, citation, StepStatus::Pass)
    }

    pub fn fail(name: impl Into<String>, citation: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(name, citation, StepStatus::Fail(witness.into()))
    }

    /// Pass when `ok`, otherwise fail with `witness`.
    pub fn check(name: impl Into<String>, citation: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        if ok {
            Self::pass(name, citation)
        } else {
            Self::fail(name, citation, witness)
        }
    }

    pub fn with_detail(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.details.push((key.into(), value.to_string()));
        self
    }

    pub fn passed(&self) -> bool {
        self.status == StepStatus::Pass
    }

    pub fn witness(&self) -> Option<&str> {
        match &self.status {
            StepStatus::Pass => None,
            StepStatus::Fail(w) => Some(w),
        }
    }
}

impl fmt::Display for VerificationStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            StepStatus::Pass => write!(f, "PASS {}  [{}]", self.name, self.citation),
            StepStatus::Fail(w) => write!(f, "FAIL {}  [{}]: {}", self.name, self.citation, w),
        }
    }
}

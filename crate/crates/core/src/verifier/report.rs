use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Duration;

use crate::report::{StepStatus, VerificationStep};

#[derive(Clone, Debug)]
pub struct StepRecord {
    pub step: VerificationStep,
    pub elapsed: Duration,
    pub mandatory: bool,
}

/// Outcome of a scenario run or ring query.
#[derive(Clone, Debug)]
pub struct Report {
    pub scenario: String,
    pub mode: String,
    pub assumptions: Vec<String>,
    pub steps: Vec<StepRecord>,
}

fn escape(v: &str) -> String {
    v.replace('\\', "\\\\").replace('\n', "\\n")
}

impl Report {
    pub fn new(scenario: impl Into<String>, mode: impl Into<String>) -> Self {
        Report {
            scenario: scenario.into(),
            mode: mode.into(),
            assumptions: Vec::new(),
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, step: VerificationStep, elapsed: Duration) {
        self.steps.push(StepRecord {
            step,
            elapsed,
            mandatory: true,
        });
    }

    pub fn passed(&self) -> bool {
        self.steps.iter().all(|r| !r.mandatory || r.step.passed())
    }

    pub fn failed_steps(&self) -> impl Iterator<Item = &VerificationStep> {
        self.steps.iter().filter(|r| !r.step.passed()).map(|r| &r.step)
    }

    pub fn step(&self, name: &str) -> Option<&VerificationStep> {
        self.steps.iter().map(|r| &r.step).find(|s| s.name == name)
    }

    /// Flat `key = value` lines sorted by key; no timings, so identical
    /// inputs give identical bytes.
    pub fn machine(&self) -> String {
        let width = self.steps.len().saturating_sub(1).to_string().len().max(2);
        let mut kv: BTreeMap<String, String> = BTreeMap::new();
        kv.insert("scenario".into(), self.scenario.clone());
        kv.insert("mode".into(), self.mode.clone());
        kv.insert("summary".into(), if self.passed() { "pass" } else { "fail" }.into());
        kv.insert("steps".into(), self.steps.len().to_string());
        for (i, a) in self.assumptions.iter().enumerate() {
            kv.insert(format!("assumption.{i:0width$}"), a.clone());
        }
        for (i, r) in self.steps.iter().enumerate() {
            let p = format!("step.{i:0width$}");
            kv.insert(format!("{p}.name"), r.step.name.clone());
            kv.insert(format!("{p}.citation"), r.step.citation.clone());
            kv.insert(format!("{p}.mandatory"), r.mandatory.to_string());
            match &r.step.status {
                StepStatus::Pass => {
                    kv.insert(format!("{p}.status"), "pass".into());
                }
                StepStatus::Fail(w) => {
                    kv.insert(format!("{p}.status"), "fail".into());
                    kv.insert(format!("{p}.witness"), w.clone());
                }
            }
            for (k, v) in &r.step.details {
                kv.insert(format!("{p}.detail.{k}"), v.clone());
            }
        }
        let mut out = String::new();
        for (k, v) in kv {
            writeln!(out, "{k} = {}", escape(&v)).expect("string write");
        }
        out
    }

    /// Human-readable report with per-step timings.
    pub fn human(&self) -> String {
        let mut out = String::new();
        writeln!(out, "scenario {} ({})", self.scenario, self.mode).expect("string write");
        for a in &self.assumptions {
            writeln!(out, "  assumed, not verified: {a}").expect("string write");
        }
        for (i, r) in self.steps.iter().enumerate() {
            let status = if r.step.passed() { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "[{i:>2}] {status} {}  ({:.1} ms)",
                r.step.name,
                r.elapsed.as_secs_f64() * 1e3
            )
            .expect("string write");
            writeln!(out, "     checks: {}", r.step.citation).expect("string write");
            for (k, v) in &r.step.details {
                writeln!(out, "     {k}: {v}").expect("string write");
            }
            if let Some(w) = r.step.witness() {
                writeln!(out, "     witness: {w}").expect("string write");
            }
        }
        let passed = self.steps.iter().filter(|r| r.step.passed()).count();
        writeln!(
            out,
            "summary: {} ({passed}/{} steps passed)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.steps.len()
        )
        .expect("string write");
        out
    }
}

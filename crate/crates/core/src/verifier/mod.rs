//! Scenario loading, check orchestration and reports.

mod report;
mod run;
mod scenario;

pub use report::{Report, StepRecord};
pub use run::run_scenario;
pub use scenario::{Check, CheckDecl, CurveDecl, Located, ModeChoice, Scenario, CHECK_NAMES};

use std::time::Instant;

use thiserror::Error;

use crate::exact::{RankMode, DEFAULT_PRIME};
use crate::jacobian::{is_smooth_artinian, is_surjective, left_kernel_via_duality, macaulay_pairing_check, multiplication_map, MapOptions};
use crate::report::VerificationStep;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScenarioError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: unknown check {name:?}")]
    UnknownCheck { name: String, line: usize, column: usize },
    #[error("{0}")]
    Query(String),
}

const QUARTIC_FAMILY: &str = include_str!("../../scenarios/quartic-family.scn");
const SHIODA: &str = include_str!("../../scenarios/shioda.scn");

/// Names of the bundled scenarios.
pub const BUILTINS: &[&str] = &["quartic-family", "shioda"];

/// Source text of a bundled scenario.
pub fn builtin(name: &str) -> Option<&'static str> {
    match name {
        "quartic-family" => Some(QUARTIC_FAMILY),
        "shioda" => Some(SHIODA),
        _ => None,
    }
}

/// Rank strategy for a run. With `forced`, `mode` overrides per-check
/// options.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub mode: RankMode,
    pub forced: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            mode: RankMode::Modular(DEFAULT_PRIME),
            forced: false,
        }
    }
}

impl RunOptions {
    pub fn forced(mode: RankMode) -> Self {
        RunOptions { mode, forced: true }
    }

    pub fn label(&self) -> String {
        if self.forced {
            self.mode.to_string()
        } else {
            format!("{} unless a check sets its own", self.mode)
        }
    }
}

/// Single-check queries against the ring of a scenario.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingQuery {
    Dim { k: u32 },
    Map { a: u32, b: u32 },
    /// Pairing at `k`, or the duality route for `R_a ⊗ R_b` when both are set.
    Duality { k: u32, ab: Option<(u32, u32)> },
    Smooth,
}

pub fn ring_query(s: &Scenario, query: RingQuery, mode: RankMode) -> Result<Report, ScenarioError> {
    let ring = s
        .ring
        .as_deref()
        .ok_or_else(|| ScenarioError::Query(format!("scenario {} declares no [ring] form", s.name)))?;
    let err = |e: crate::jacobian::RingError| ScenarioError::Query(e.to_string());
    let mut report = Report::new(&s.name, mode.to_string());
    let t = Instant::now();
    let step = match query {
        RingQuery::Dim { k } => {
            let d = ring.dim(k);
            VerificationStep::pass(format!("dim R_{k}"), "graded piece dimension")
                .with_detail("dim", d)
                .with_detail("summary", format!("dim R_{k} = {d}"))
        }
        RingQuery::Map { a, b } => {
            let map = multiplication_map(ring, a, b, MapOptions::default()).map_err(err)?;
            let c = is_surjective(&map, mode).map_err(err)?;
            let cert = match c.certificate.mode {
                RankMode::Exact => "exact elimination".to_string(),
                RankMode::Modular(p) => format!("modular certificate p={p}"),
            };
            let summary = format!(
                "{}, rank {}, {cert}",
                if c.surjective { "surjective" } else { "not surjective" },
                c.certificate.rank
            );
            VerificationStep::check(
                format!("R_{a} ⊗ R_{b} → R_{}", a + b),
                "multiplication map",
                c.surjective,
                summary.clone(),
            )
            .with_detail("rank", c.certificate.rank)
            .with_detail("target_dim", c.target_dim)
            .with_detail("summary", summary)
        }
        RingQuery::Duality { k, ab: None } => {
            let p = macaulay_pairing_check(ring, k).map_err(err)?;
            let summary = format!(
                "{} (dim R_{k} = {}, dim R_{} = {}, rank {})",
                if p.nondegenerate { "perfect pairing" } else { "degenerate pairing" },
                p.dim_k,
                ring.socle_degree() - k,
                p.dim_dual,
                p.rank
            );
            VerificationStep::check(format!("pairing R_{k} × R_{}", ring.socle_degree() - k), "Macaulay duality", p.nondegenerate, summary.clone())
                .with_detail("rank", p.rank)
                .with_detail("summary", summary)
        }
        RingQuery::Duality { ab: Some((a, b)), .. } => {
            let v = left_kernel_via_duality(ring, a, b, mode).map_err(err)?;
            let summary = format!(
                "{}: dual map rank {} of {}, pairing rank {}",
                if v.no_left_kernel { "no left kernel" } else { "not certified" },
                v.surjectivity.certificate.rank,
                v.surjectivity.target_dim,
                v.pairing.rank
            );
            VerificationStep::check(format!("R_{a} ⊗ R_{b} left kernel"), "duality route", v.no_left_kernel, summary.clone())
                .with_detail("summary", summary)
        }
        RingQuery::Smooth => {
            let c = is_smooth_artinian(ring, mode).map_err(err)?;
            let summary = format!(
                "{}: rank {} of {} in degree {} ({})",
                if c.smooth { "smooth" } else { "singular" },
                c.certificate.rank,
                c.ambient_dim,
                ring.socle_degree() + 1,
                c.certificate.mode
            );
            VerificationStep::check("smoothness", "quotient vanishes above the socle", c.smooth, summary.clone())
                .with_detail("summary", summary)
        }
    };
    report.push(step, t.elapsed());
    Ok(report)
}

//! The deformed Fermat quartic family, its elliptic pencil along a line and
//! the hyperelliptic condition on the pencil, as exact polynomial identities.
//!
//! A [`PencilScenario`] is built from [`PencilTexts`], a table of polynomial
//! texts keyed by name whose defaults describe the standard family; any key
//! can be overridden before building.

mod checks;

pub use checks::{
    euler_cross_check, lambda_zero_degeneration, report_degenerate_parameters, run_all, tangent_line_identities,
    verify_blowup_factorization, verify_concurrency, verify_hyperelliptic_condition, verify_lambda_identity,
    verify_partials, verify_tangent_lines, verify_tau, clear_denominators, Degeneration,
};

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{parse_with_definitions, PolyError, PolyRing, SparsePoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PencilError {
    #[error("unknown pencil key {0:?}")]
    UnknownKey(String),
    #[error("pencil key {key}: {source}")]
    Field { key: String, source: PolyError },
    #[error("pencil key {key}: expected {expected} comma-separated entries, found {found}")]
    Arity { key: String, expected: usize, found: usize },
    #[error("pencil key {key}: {message}")]
    Invalid { key: String, message: String },
}

const DEFAULTS: &[(&str, &str)] = &[
    ("surface_variables", "x0, x1, x2, x3"),
    ("plane_variables", "x, y, z"),
    ("lambda", "lambda"),
    ("parameter", "t"),
    ("cube_root", "a"),
    ("line.L0", "x1 - x2"),
    ("line.L1", "x0 - x3"),
    ("line.L2", "x1 + x3"),
    ("line.L3", "x0 - x2"),
    ("family", "x0^4 + x1^4 - x2^4 - x3^4 + 2*t*L0*L1*L2*L3"),
    ("substitute.x0", "x + z"),
    ("substitute.x1", "y + lambda*z"),
    ("substitute.x2", "y - lambda*z"),
    ("substitute.x3", "x - z"),
    ("blowup_factor", "8*z"),
    ("plane_line.L2", "x + y + (lambda - 1)*z"),
    ("plane_line.L3", "x - y + (lambda + 1)*z"),
    ("residual", "x^3 + lambda*y^3 + z^2*(x + lambda^3*y) + lambda*t*z*L2*L3"),
    ("partial.x", "3*x^2 + z^2 + lambda*t*z*(L2 + L3)"),
    ("partial.y", "3*lambda*y^2 + lambda^3*z^2 + lambda*t*z*(L3 - L2)"),
    (
        "partial.z",
        "2*z*(x + lambda^3*y) + lambda*t*L2*L3 + lambda*t*z*((lambda - 1)*L3 + (lambda + 1)*L2)",
    ),
    ("base_point.1", "a, 1, 0"),
    ("base_point.2", "a*w, 1, 0"),
    ("base_point.3", "a*w^2, 1, 0"),
    ("tangent.1", "3*a^2, 3*lambda, lambda*t*(a^2 - 1)"),
    ("tangent.2", "3*a^2*w^2, 3*lambda, lambda*t*(a^2*w^2 - 1)"),
    ("tangent.3", "3*a^2*w^4, 3*lambda, lambda*t*(a^2*w^4 - 1)"),
    ("concurrency", "-lambda*t, t, 3"),
    ("hyperelliptic_factors", "t, lambda, lambda - 1"),
    ("f_second", "lambda*(t^2 - 18*t + 9) + 4*t^2 - 6*t - 18"),
    ("lambda_numerator", "-(4*t^2 - 6*t - 18)"),
    ("lambda_denominator", "t^2 - 18*t + 9"),
    ("tau", "2, -2, 0"),
];

/// Textual description of a pencil scenario.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilTexts {
    entries: BTreeMap<String, String>,
}

impl Default for PencilTexts {
    fn default() -> Self {
        PencilTexts {
            entries: DEFAULTS.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        }
    }
}

impl PencilTexts {
    pub fn keys() -> impl Iterator<Item = &'static str> {
        DEFAULTS.iter().map(|(k, _)| *k)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<(), PencilError> {
        match self.entries.get_mut(key) {
            Some(slot) => {
                *slot = value.into();
                Ok(())
            }
            None => Err(PencilError::UnknownKey(key.to_string())),
        }
    }

    fn text(&self, key: &str) -> &str {
        self.entries.get(key).map(String::as_str).expect("default key")
    }

    fn list(&self, key: &str) -> Vec<String> {
        self.text(key)
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect()
    }
}

/// Typed pencil data. `plane_ring` has the variables
/// `coords ++ [lambda, parameter, cube_root]` over the tower domain.
#[derive(Clone, Debug)]
pub struct PencilScenario {
    pub surface_ring: Arc<PolyRing>,
    pub plane_ring: Arc<PolyRing>,
    pub coords: [String; 3],
    pub lambda: String,
    pub parameter: String,
    pub cube_root: String,
    pub family: SparsePoly,
    pub substitution: Vec<(String, SparsePoly)>,
    pub blowup_factor: SparsePoly,
    pub residual: SparsePoly,
    pub partials: [SparsePoly; 3],
    pub base_points: [[SparsePoly; 3]; 3],
    pub tangents: [[SparsePoly; 3]; 3],
    pub concurrency: [SparsePoly; 3],
    pub hyperelliptic_factors: Vec<SparsePoly>,
    pub f_second: SparsePoly,
    pub lambda_numerator: SparsePoly,
    pub lambda_denominator: SparsePoly,
    pub tau: Vec<BigInt>,
}

impl Default for PencilScenario {
    fn default() -> Self {
        PencilScenario::from_texts(&PencilTexts::default()).expect("default pencil texts parse")
    }
}

fn field(key: &str) -> impl Fn(PolyError) -> PencilError + '_ {
    move |source| PencilError::Field {
        key: key.to_string(),
        source,
    }
}

fn triple(key: &str, v: Vec<SparsePoly>) -> Result<[SparsePoly; 3], PencilError> {
    let found = v.len();
    v.try_into().map_err(|_| PencilError::Arity {
        key: key.to_string(),
        expected: 3,
        found,
    })
}

impl PencilScenario {
    pub fn from_texts(texts: &PencilTexts) -> Result<Self, PencilError> {
        let surface_vars = texts.list("surface_variables");
        let coords = texts.list("plane_variables");
        if surface_vars.len() != 4 {
            return Err(PencilError::Arity {
                key: "surface_variables".into(),
                expected: 4,
                found: surface_vars.len(),
            });
        }
        let coords: [String; 3] = coords.try_into().map_err(|v: Vec<String>| PencilError::Arity {
            key: "plane_variables".into(),
            expected: 3,
            found: v.len(),
        })?;
        let lambda = texts.text("lambda").trim().to_string();
        let parameter = texts.text("parameter").trim().to_string();
        let cube_root = texts.text("cube_root").trim().to_string();

        let mut svars = surface_vars.clone();
        svars.push(parameter.clone());
        let surface_ring = PolyRing::new(svars, crate::poly::Domain::Rationals).map_err(field("surface_variables"))?;
        let mut pvars: Vec<String> = coords.to_vec();
        pvars.extend([lambda.clone(), parameter.clone(), cube_root.clone()]);
        let plane_ring = PolyRing::tower(pvars, &cube_root, &lambda).map_err(field("plane_variables"))?;

        let mut surface_defs = Vec::new();
        for i in 0..4 {
            let key = format!("line.L{i}");
            let p = parse_with_definitions(texts.text(&key), &surface_ring, &[]).map_err(field(&key))?;
            surface_defs.push((format!("L{i}"), p));
        }
        let family = parse_with_definitions(texts.text("family"), &surface_ring, &surface_defs).map_err(field("family"))?;

        let plain = |key: &str| parse_with_definitions(texts.text(key), &plane_ring, &[]).map_err(field(key));
        let mut substitution = Vec::new();
        for v in &surface_vars {
            let key = format!("substitute.{v}");
            let text = texts.get(&key).ok_or_else(|| PencilError::Invalid {
                key: key.clone(),
                message: "no image declared for this surface variable".into(),
            })?;
            let p = parse_with_definitions(text, &plane_ring, &[]).map_err(field(&key))?;
            substitution.push((v.clone(), p));
        }
        let plane_defs = vec![
            ("L2".to_string(), plain("plane_line.L2")?),
            ("L3".to_string(), plain("plane_line.L3")?),
        ];
        let with_defs =
            |key: &str| parse_with_definitions(texts.text(key), &plane_ring, &plane_defs).map_err(field(key));
        let list = |key: &str| -> Result<Vec<SparsePoly>, PencilError> {
            texts
                .list(key)
                .iter()
                .map(|t| parse_with_definitions(t, &plane_ring, &[]).map_err(field(key)))
                .collect()
        };
        let residual = with_defs("residual")?;
        let partials = [with_defs("partial.x")?, with_defs("partial.y")?, with_defs("partial.z")?];
        let base_points = [
            triple("base_point.1", list("base_point.1")?)?,
            triple("base_point.2", list("base_point.2")?)?,
            triple("base_point.3", list("base_point.3")?)?,
        ];
        let tangents = [
            triple("tangent.1", list("tangent.1")?)?,
            triple("tangent.2", list("tangent.2")?)?,
            triple("tangent.3", list("tangent.3")?)?,
        ];
        let concurrency = triple("concurrency", list("concurrency")?)?;
        let tau = texts
            .list("tau")
            .iter()
            .map(|s| {
                s.parse::<BigInt>().map_err(|_| PencilError::Invalid {
                    key: "tau".into(),
                    message: format!("{s:?} is not an integer"),
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(PencilScenario {
            surface_ring,
            blowup_factor: plain("blowup_factor")?,
            hyperelliptic_factors: list("hyperelliptic_factors")?,
            f_second: plain("f_second")?,
            lambda_numerator: plain("lambda_numerator")?,
            lambda_denominator: plain("lambda_denominator")?,
            plane_ring,
            coords,
            lambda,
            parameter,
            cube_root,
            family,
            substitution,
            residual,
            partials,
            base_points,
            tangents,
            concurrency,
            tau,
        })
    }

    /// Plane-ring polynomial for `text`, with `L2`, `L3` unavailable.
    pub fn parse(&self, text: &str) -> Result<SparsePoly, PolyError> {
        parse_with_definitions(text, &self.plane_ring, &[])
    }

    fn coord_assignment<'a>(&'a self, point: &[SparsePoly; 3]) -> Vec<(&'a str, SparsePoly)> {
        self.coords.iter().map(String::as_str).zip(point.iter().cloned()).collect()
    }

    /// `f` evaluated at a point of the plane, in the plane ring.
    pub fn at_point(&self, f: &SparsePoly, point: &[SparsePoly; 3]) -> Result<SparsePoly, PolyError> {
        f.substitute_in_place(&self.coord_assignment(point))
    }
}

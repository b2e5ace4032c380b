//! Line sections of plane curves and the relation lattices they generate.

mod cycle;
mod univariate;

pub use cycle::{
    binary_form_cycle, holds_at, hyperplane_relations, lcm_orders, minimal_equivalence_order, restrict_to_line,
    BinaryCycle, DivisorCycle, EquivalenceOrder, LineSection, PlaneCurve, PointTable, RelationLattice,
    ResidualFactor, SectionMode,
};
pub use univariate::UniPoly;

use thiserror::Error;

use crate::exact::ExactError;
use crate::poly::PolyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("the line {0} = 0 is a component of the curve")]
    LineIsComponent(String),
    #[error("the plane {0} = 0 is contained in the surface")]
    PlaneIsComponent(String),
    #[error("{0} is not a usable coordinate here")]
    NotACoordinate(String),
    #[error("{curve} meets {line} = 0 in points that are not rational")]
    NonRationalIntersection { curve: String, line: String },
    #[error("unknown point label {0:?}")]
    UnknownLabel(String),
    #[error("parameter {0} survives restriction and has no sample value")]
    ParameterPresent(String),
    #[error("binary form is zero")]
    ZeroForm,
    #[error("form is not homogeneous")]
    NotHomogeneous,
    #[error("form must have rational coefficients")]
    NotRational,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

//! Sparse multivariate polynomials over Q, Q(w) and the tower Q(w)[a]/(a³ + λ).

mod coeff;
mod geometry;
mod monomial;
mod ops;
mod parse;
mod ring;

pub use coeff::Coeff;
pub use geometry::{check_parametrization, multiplicity_at_point, ProjectivePoint};
pub use monomial::{enumerate_monomials, Monomial};
pub use ops::coefficient_in;
pub use parse::{parse_poly, parse_with_definitions};
pub use ring::{Domain, PolyRing, SparsePoly};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials live in different rings or domains")]
    DomainMismatch,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("variable {0:?} has no image under the substitution")]
    Unassigned(String),
    #[error("duplicate or reserved variable name {0:?}")]
    DuplicateVariable(String),
    #[error("tower generator and lambda must be two distinct declared variables")]
    BadTower,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible; remainder {remainder}")]
    NotDivisible { remainder: String },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("map components have different degrees")]
    DegreeMismatch,
    #[error("expected {expected} entries, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("declared coordinate {0} is zero")]
    ZeroCoordinate(usize),
    #[error("the zero polynomial has no multiplicity")]
    ZeroPolynomial,
    #[error("parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },
}

/// Convenience for tests and built-in scenarios.
pub fn poly(text: &str, ring: &std::sync::Arc<PolyRing>) -> SparsePoly {
    parse_poly(text, ring).unwrap_or_else(|e| panic!("{text:?}: {e}"))
}

//! Graded pieces of Jacobian rings and their multiplication maps.

mod maps;
mod piece;
mod ring;

pub use maps::{
    functional_kernel, is_surjective, left_kernel, left_kernel_via_duality, linear_form_rank, macaulay_pairing_check,
    multiplication_map, pairing_functional, uniform_mult_rank_bound, DualityVerdict, MapOptions, MultiplicationMap,
    PairingCheck, SurjectivityCheck,
};
pub use piece::GradedPiece;
pub use ring::{hilbert_function, hilbert_function_mod, is_smooth_artinian, jacobian_span_rank_mod, HypersurfaceRing, SmoothnessCheck};

use thiserror::Error;

use crate::exact::ExactError;
use crate::poly::PolyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("defining form is not homogeneous")]
    NotHomogeneous,
    #[error("defining form has degree {0}; need at least 2")]
    DegreeTooSmall(u32),
    #[error("defining form must have rational coefficients")]
    NotRational,
    #[error("bad degree {degree}: {reason}")]
    BadDegree { degree: u32, reason: &'static str },
    #[error("socle has dimension {0}, expected 1")]
    SocleNotOneDimensional(usize),
    #[error("Jacobian ideal is not generated by monomials")]
    IdealNotMonomial,
    #[error("vector length must be {expected}")]
    BadVector { expected: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

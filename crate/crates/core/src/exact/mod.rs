//! Exact rational and integer linear algebra.

mod echelon;
mod field;
mod hnf;
mod matrix;

pub use echelon::{Echelon, SparseVec};
pub use field::{common_denominator, Field, PrimeField, Rationals};
pub use hnf::{hermite_decomposition, hermite_normal_form, minimal_multiple_in_lattice, HermiteForm, LatticeMultiple};
pub use matrix::{kernel_basis, modular_rank, rank, ExactMatrix, IntMatrix, RankCertificate, RankMode};

use num_bigint::BigInt;
use thiserror::Error;

/// Default prime for modular rank certificates.
pub const DEFAULT_PRIME: u64 = 1_000_003;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("prime {prime} divides denominator {denominator}")]
    BadPrime { prime: u64, denominator: BigInt },
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },
}

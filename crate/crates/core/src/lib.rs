//! Exact verification toolkit for Jacobian rings of surfaces, the quartic
//! elliptic pencil, divisor relation lattices on plane curves and diagonal
//! automorphism characters.

pub mod exact;
pub mod poly;
pub mod jacobian;
pub mod curves;
pub mod report;
pub mod pencil;
pub mod characters;
pub mod verifier;

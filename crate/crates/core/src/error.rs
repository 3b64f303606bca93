use alloc::boxed::Box;
use alloc::string::String;

use crate::rational::Q;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("classes live in different lattices ({left} vs {right})")]
    LatticeMismatch { left: String, right: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("origin is not an interior point of the polytope")]
    OriginNotInterior,

    #[error("polytope is not full-dimensional")]
    NotFullDimensional,

    #[error("polar dual is not a lattice polytope")]
    NonIntegralDual,

    #[error("polytope is not reflexive")]
    NotReflexive,

    #[error("fan is not complete: {0}")]
    IncompleteFan(String),

    #[error("fan is not simplicial")]
    NotSimplicial,

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("inconclusive after {iterations} rounds: primal {primal}, dual {dual}")]
    Inconclusive { iterations: usize, primal: Box<Q>, dual: Box<Q> },

    #[error("theorem violation (implementation bug): {0}")]
    TheoremViolation(String),
}

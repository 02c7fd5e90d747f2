//! Symbolic homology for connected sums of spheres and sphere products: Betti
//! vectors, exact-sequence rank solving, and the critical-point lower bound.

mod bound;
mod descriptor;
mod exact;
mod parse;

use thiserror::Error;

pub use bound::{lower_bound, BoundVerdict, HypothesisCheck, LowerBoundReport};
pub use descriptor::{
    Atom, DescriptorError, EmbedsInS4, ManifoldDescriptor, EXOTIC_SPHERE_GROUP_ORDER_8_16, MAX_MANIFOLD_DIM,
};
pub use exact::{
    exact_solve, gysin_segment, gysin_unknown_rank, puncture_betti, ExactSequenceSpec, ExactSolution,
    InfeasibilityCertificate, Slot,
};
pub use parse::{parse_descriptor, ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("expected exactly one unknown slot, found {0}")]
    UnknownCount(usize),
    #[error("the removed point set must be nonempty")]
    EmptyPointSet,
    #[error("dimension parameter {0} is below 2")]
    DimensionTooSmall(usize),
    #[error("manifold has odd dimension {0}")]
    OddDimension(usize),
    #[error("expected a manifold of dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rank arithmetic overflows")]
    Overflow,
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
}

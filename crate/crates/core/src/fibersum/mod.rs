//! Fiber sums of suspended Hopf maps along multigraphs: block planning, the
//! assembled source and target, and the verdict joining construction and bound.

mod assemble;
mod disks;
mod enumerate;
mod graph;
mod verdict;

use thiserror::Error;

use crate::homcalc::{DescriptorError, HomError};

pub use assemble::{assemble, sigma_exotic_possible, AssemblyResult};
pub use disks::{plan_disks, BlockSpec, DisjointnessCertificate, DiskPlacement, Gluing};
pub use enumerate::{canonical_form, canonical_form_brute, enumerate_graphs, MAX_ENUMERATION_EDGES};
pub use graph::{EdgeEnd, FiberSumGraph, GraphDocument};
pub use verdict::{phi_verdict, witness_graph, CrossCheck, SigmaKind, Verdict, VerdictKind, MAX_WITNESS_EDGES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("graph has no vertices")]
    EmptyVertexSet,
    #[error("edge {edge} uses vertex {vertex}, but the graph has {vertices} vertices")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        vertices: usize,
    },
    #[error("graph is disconnected: vertex {vertex} is unreachable from vertex 0")]
    Disconnected { vertex: usize },
    #[error("malformed graph document: {0}")]
    Json(String),
    #[error("unsupported n = {0}; expected 2, 4 or 8")]
    UnsupportedN(usize),
    #[error("e and c must be nonnegative, got e = {e}, c = {c}")]
    NegativeInput { e: i64, c: i64 },
    #[error("no connected graph has e = {e} < c = {c}")]
    NoWitness { e: usize, c: usize },
    #[error("enumeration beyond {MAX_ENUMERATION_EDGES} edges is not supported, got {0}")]
    EnumerationTooLarge(usize),
    #[error(transparent)]
    Hom(#[from] HomError),
}

impl From<DescriptorError> for FiberError {
    fn from(e: DescriptorError) -> Self {
        Self::Hom(HomError::Descriptor(e))
    }
}

use serde::Serialize;

use crate::homcalc::ManifoldDescriptor;
use crate::hopfmaps::check_n;

use super::disks::{plan_disks, BlockSpec};
use super::graph::{EdgeEnd, FiberSumGraph};
use super::FiberError;

/// The fiber sum of suspensions along a graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssemblyResult {
    pub n: usize,
    pub m: usize,
    pub e: usize,
    pub c: usize,
    /// Target `#_c S^1×S^n`.
    pub a_descriptor: ManifoldDescriptor,
    /// Source `Σ^{2n} #_e S^n×S^n #_c S^1×S^{2n−1}`.
    pub b_descriptor: ManifoldDescriptor,
    /// Two poles per vertex block.
    pub critical_count: usize,
    /// `2e − 2c + 2`.
    pub phi_formula_value: i64,
    pub blocks: Vec<BlockSpec>,
    pub pairing: Vec<[EdgeEnd; 2]>,
}

/// Whether the homotopy-sphere summand of the source may be exotic.
///
/// Doubles only appear once there is an edge, and `Σ^4` from this construction is standard.
pub fn sigma_exotic_possible(n: usize, e: usize) -> bool {
    e >= 1 && n != 2
}

pub fn assemble(g: &FiberSumGraph, n: usize) -> Result<AssemblyResult, FiberError> {
    check_n(n).map_err(|_| FiberError::UnsupportedN(n))?;
    let (m, e, c) = (g.vertex_count(), g.edge_count(), g.cycle_rank());
    let a_descriptor = ManifoldDescriptor::theorem_target(n, c)?;
    let b_descriptor = ManifoldDescriptor::theorem_source(n, e, c, sigma_exotic_possible(n, e))?;
    Ok(AssemblyResult {
        n,
        m,
        e,
        c,
        a_descriptor,
        b_descriptor,
        critical_count: 2 * m,
        phi_formula_value: 2 * e as i64 - 2 * c as i64 + 2,
        blocks: (0..m).map(|v| plan_disks(g.valence(v))).collect(),
        pairing: g.pairing(),
    })
}

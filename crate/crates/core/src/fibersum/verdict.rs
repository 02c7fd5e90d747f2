use serde::Serialize;

use crate::homcalc::lower_bound;
use crate::hopfmaps::check_n;

use super::assemble::assemble;
use super::graph::FiberSumGraph;
use super::FiberError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaKind {
    /// `Σ^{2n} = S^{2n}`.
    Standard,
    /// A homotopy sphere, possibly exotic.
    Homotopy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Exact,
    UpperOnly,
    Unknown,
    FibrationZero,
}

impl VerdictKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::UpperOnly => "upper_only",
            Self::Unknown => "unknown",
            Self::FibrationZero => "fibration_zero",
        }
    }
}

/// Upper and lower bound recomputed on a concrete graph with the given `(e, c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub witness_vertices: usize,
    pub witness_edges: Vec<[usize; 2]>,
    pub critical_count: usize,
    pub lower_bound: Option<i64>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub e: u64,
    pub c: u64,
    pub n: usize,
    pub sigma: SigmaKind,
    pub kind: VerdictKind,
    pub value: Option<i64>,
    pub reason: String,
    pub hypotheses: Vec<String>,
    pub cross_check: Option<CrossCheck>,
}

/// A path on `e − c + 1` vertices with `c` loops at vertex 0.
pub fn witness_graph(e: usize, c: usize) -> Result<FiberSumGraph, FiberError> {
    if e < c {
        return Err(FiberError::NoWitness { e, c });
    }
    let m = e - c + 1;
    let mut edges: Vec<(usize, usize)> = (1..m).map(|v| (v - 1, v)).collect();
    edges.extend(std::iter::repeat_n((0, 0), c));
    FiberSumGraph::new(m, edges)
}

/// Largest `e` for which a witness graph is built.
pub const MAX_WITNESS_EDGES: u64 = 4096;

pub fn phi_verdict(e: i64, c: i64, n: usize, sigma: SigmaKind, embedding_assumed: bool) -> Result<Verdict, FiberError> {
    if e < 0 || c < 0 {
        return Err(FiberError::NegativeInput { e, c });
    }
    check_n(n).map_err(|_| FiberError::UnsupportedN(n))?;
    let (e, c) = (e as u64, c as u64);
    let mut v = Verdict {
        e,
        c,
        n,
        sigma,
        kind: VerdictKind::Unknown,
        value: None,
        reason: String::new(),
        hypotheses: Vec::new(),
        cross_check: None,
    };
    if c == 1 && e == 0 {
        if sigma == SigmaKind::Standard {
            v.kind = VerdictKind::FibrationZero;
            v.value = Some(0);
            v.reason = format!("S^{} fibers over S^1 x S^{n}", 2 * n);
        } else {
            v.reason = "c = 1, e = 0 with a homotopy sphere: no fibration is known".into();
        }
        return Ok(v);
    }
    if c == 1 {
        v.kind = VerdictKind::UpperOnly;
        v.value = Some(2 * e as i64);
        v.reason = "c = 1: the construction gives an upper bound only".into();
        return Ok(v);
    }
    if e < c {
        v.reason = "e < c: no construction or bound applies".into();
        return Ok(v);
    }
    if n == 2 && sigma == SigmaKind::Homotopy {
        if !embedding_assumed {
            v.reason = "n = 2 with a homotopy sphere needs the S^4 embedding hypothesis".into();
            return Ok(v);
        }
        v.hypotheses
            .push("Sigma^4 minus an open disk embeds in S^4 (assumed)".into());
    }
    let value = 2 * e as i64 - 2 * c as i64 + 2;
    v.kind = VerdictKind::Exact;
    v.value = Some(value);
    v.reason = "e >= c, c != 1".into();
    if e <= MAX_WITNESS_EDGES {
        let g = witness_graph(e as usize, c as usize)?;
        let asm = assemble(&g, n)?;
        let lb = lower_bound(&asm.b_descriptor, n)?.bound;
        v.cross_check = Some(CrossCheck {
            witness_vertices: g.vertex_count(),
            witness_edges: g.to_document().edges,
            critical_count: asm.critical_count,
            lower_bound: lb,
            agree: lb == Some(value) && asm.critical_count as i64 == value,
        });
    }
    Ok(v)
}

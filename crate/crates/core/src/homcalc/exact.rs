//! Rank bookkeeping for finite exact sequences of free abelian groups.

use serde::Serialize;

use super::{HomError, ManifoldDescriptor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    Known(u64),
    Unknown,
}

/// `0 → G_0 → G_1 → … → G_k → 0` exact, with ranks listed in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSequenceSpec {
    pub label: String,
    pub slots: Vec<Slot>,
}

/// Emitted instead of a value when exactness would force a negative rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfeasibilityCertificate {
    pub label: String,
    pub unknown_index: usize,
    /// The rank exactness demands.
    pub required_rank: i64,
    /// `Σ (−1)^i rank G_i` over the known slots.
    pub known_alternating_sum: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExactSolution {
    Rank { value: u64 },
    Infeasible(InfeasibilityCertificate),
}

impl ExactSolution {
    pub fn rank(&self) -> Option<u64> {
        match self {
            Self::Rank { value } => Some(*value),
            Self::Infeasible(_) => None,
        }
    }
}

impl ExactSequenceSpec {
    pub fn new(label: impl Into<String>, slots: Vec<Slot>) -> Self {
        Self {
            label: label.into(),
            slots,
        }
    }
}

fn sign(i: usize) -> i64 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The unique rank for the unknown slot that makes the alternating sum vanish.
pub fn exact_solve(spec: &ExactSequenceSpec) -> Result<ExactSolution, HomError> {
    let unknowns: Vec<usize> = spec
        .slots
        .iter()
        .enumerate()
        .filter(|(_, s)| matches!(s, Slot::Unknown))
        .map(|(i, _)| i)
        .collect();
    let k = match unknowns.as_slice() {
        [k] => *k,
        other => return Err(HomError::UnknownCount(other.len())),
    };
    let mut sum: i64 = 0;
    for (i, s) in spec.slots.iter().enumerate() {
        if let Slot::Known(r) = s {
            let r = i64::try_from(*r).map_err(|_| HomError::Overflow)?;
            sum = sum.checked_add(sign(i) * r).ok_or(HomError::Overflow)?;
        }
    }
    let required = -sign(k) * sum;
    if required < 0 {
        Ok(ExactSolution::Infeasible(InfeasibilityCertificate {
            label: spec.label.clone(),
            unknown_index: k,
            required_rank: required,
            known_alternating_sum: sum,
        }))
    } else {
        Ok(ExactSolution::Rank { value: required as u64 })
    }
}

/// The Gysin segment computing `rank H_n(M ∖ V)` over `N ∖ B`, `|B| = b`,
/// `N = #_c S^1×S^n`.
pub fn gysin_segment(c: u64, b: u64, n: usize) -> Result<ExactSequenceSpec, HomError> {
    if b == 0 {
        return Err(HomError::EmptyPointSet);
    }
    if n < 2 {
        return Err(HomError::DimensionTooSmall(n));
    }
    let hn = b.checked_add(c).ok_or(HomError::Overflow)? - 1;
    let mut slots = vec![
        Slot::Known(0),
        Slot::Known(c),
        Slot::Unknown,
        Slot::Known(hn),
        Slot::Known(1),
    ];
    if n == 2 {
        // H_1 terms on both sides of the isomorphism cancel.
        slots.extend([Slot::Known(c), Slot::Known(c)]);
    }
    slots.push(Slot::Known(0));
    Ok(ExactSequenceSpec::new(format!("gysin n={n} c={c} |B|={b}"), slots))
}

/// `rank H_n(M ∖ V)`, which exactness forces to be `2c + |B| − 2`.
pub fn gysin_unknown_rank(c: u64, b: u64, n: usize) -> Result<ExactSolution, HomError> {
    exact_solve(&gysin_segment(c, b, n)?)
}

/// `β_n(N ∖ A) = β_n(N) + |A| − 1` for a closed `(n+1)`-manifold `N`.
pub fn puncture_betti(d: &ManifoldDescriptor, points_removed: usize) -> Result<usize, HomError> {
    if points_removed == 0 {
        return Err(HomError::EmptyPointSet);
    }
    Ok(d.betti()[d.dim() - 1] + points_removed - 1)
}

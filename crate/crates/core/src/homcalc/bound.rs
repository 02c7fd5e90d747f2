//! `φ(M, N) ≥ β_n(M) − 2c + 2` with table-driven hypothesis checks.

use serde::Serialize;

use super::{HomError, ManifoldDescriptor};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub name: &'static str,
    pub passed: bool,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundVerdict {
    Bound,
    /// `c = 1` lies outside the proposition.
    NotCovered,
    HypothesisFailed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBoundReport {
    pub manifold: ManifoldDescriptor,
    pub n: usize,
    pub c: usize,
    pub beta_n: usize,
    pub verdict: BoundVerdict,
    /// `β_n − 2c + 2`, present only when every check passes.
    pub bound: Option<i64>,
    pub hypothesis_checks: Vec<HypothesisCheck>,
}

pub fn lower_bound(m: &ManifoldDescriptor, n: usize) -> Result<LowerBoundReport, HomError> {
    if m.dim() % 2 == 1 {
        return Err(HomError::OddDimension(m.dim()));
    }
    if n < 2 {
        return Err(HomError::DimensionTooSmall(n));
    }
    if m.dim() != 2 * n {
        return Err(HomError::DimensionMismatch {
            expected: 2 * n,
            found: m.dim(),
        });
    }
    let betti = m.betti();
    let c = m.pi1_rank();
    let mut checks = Vec::new();

    // Sphere products with both factors ≥ 2 and homotopy spheres are simply
    // connected; each S^1×S^{2n−1} contributes one free generator.
    checks.push(HypothesisCheck {
        name: "pi1_free",
        passed: true,
        reason: format!("pi_1 is free of rank {c}"),
    });
    checks.push(HypothesisCheck {
        name: "c_not_one",
        passed: c != 1,
        reason: if c == 1 {
            "c = 1 is not covered".into()
        } else {
            format!("c = {c}")
        },
    });

    let low: Vec<String> = m
        .products()
        .iter()
        .filter(|&&(a, _, _)| a >= 2 && a < n)
        .map(|&(a, b, _)| format!("S{a}xS{b}"))
        .collect();
    checks.push(HypothesisCheck {
        name: "pi_j_vanish",
        passed: low.is_empty(),
        reason: if n == 2 {
            "no intermediate degrees for n = 2".into()
        } else if low.is_empty() {
            format!("pi_j = 0 for 2 <= j <= {}", n - 1)
        } else {
            format!("summands {} carry pi_j with 2 <= j < {n}", low.join(", "))
        },
    });

    if n == 2 {
        checks.push(HypothesisCheck {
            name: "h_n_minus_1_vanish",
            passed: true,
            reason: format!("n = 2: H_1 = Z^{c} comes from pi_1 and is carried by the H_1 isomorphism"),
        });
    } else {
        let b = betti[n - 1];
        checks.push(HypothesisCheck {
            name: "h_n_minus_1_vanish",
            passed: b == 0,
            reason: format!("beta_{} = {b}", n - 1),
        });
    }

    let beta_n = betti[n];
    let all = checks.iter().all(|c| c.passed);
    let verdict = if c == 1 {
        BoundVerdict::NotCovered
    } else if all {
        BoundVerdict::Bound
    } else {
        BoundVerdict::HypothesisFailed
    };
    let bound = (verdict == BoundVerdict::Bound).then(|| beta_n as i64 - 2 * c as i64 + 2);
    Ok(LowerBoundReport {
        manifold: m.clone(),
        n,
        c,
        beta_n,
        verdict,
        bound,
        hypothesis_checks: checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homcalc::parse_descriptor;

    fn bound(text: &str, n: usize) -> Option<i64> {
        lower_bound(&parse_descriptor(text).unwrap(), n).unwrap().bound
    }

    #[test]
    fn examples() {
        assert_eq!(bound("S4", 2), Some(2));
        assert_eq!(bound("S8", 4), Some(2));
        assert_eq!(bound("S2xS2", 2), Some(4));
        assert_eq!(bound("Sigma16 # 3*S8xS8 # 2*S1xS15", 8), Some(4));
    }

    #[test]
    fn c_equal_one_is_not_covered() {
        let r = lower_bound(&parse_descriptor("S4xS4 # S1xS7").unwrap(), 4).unwrap();
        assert_eq!(r.verdict, BoundVerdict::NotCovered);
        assert_eq!(r.bound, None);
    }

    #[test]
    fn low_products_fail() {
        let r = lower_bound(&parse_descriptor("S2xS6").unwrap(), 4).unwrap();
        assert_eq!(r.verdict, BoundVerdict::HypothesisFailed);
        let r = lower_bound(&parse_descriptor("S3xS5").unwrap(), 4).unwrap();
        assert!(
            !r.hypothesis_checks
                .iter()
                .find(|c| c.name == "h_n_minus_1_vanish")
                .unwrap()
                .passed
        );
    }

    #[test]
    fn dimension_errors() {
        let m = parse_descriptor("S5").unwrap();
        assert_eq!(lower_bound(&m, 2), Err(HomError::OddDimension(5)));
        let m = parse_descriptor("S6").unwrap();
        assert!(matches!(lower_bound(&m, 2), Err(HomError::DimensionMismatch { .. })));
    }
}

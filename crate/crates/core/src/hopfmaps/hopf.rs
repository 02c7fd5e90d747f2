use crate::algebra::{cayley_dickson_mul, AlgebraElement};
use crate::numgeo::{tangent_map_from_differential, SpherePoint, TangentMap};

use super::HopfError;

/// Fiber-base dimensions with a Hopf fibration over a normed division algebra.
pub const SUPPORTED_N: [usize; 3] = [2, 4, 8];

pub fn check_n(n: usize) -> Result<(), HopfError> {
    if SUPPORTED_N.contains(&n) {
        Ok(())
    } else {
        Err(HopfError::UnsupportedN(n))
    }
}

/// The Hopf fibration `S^{2n-1} ⊂ K×K → S^n ⊂ K×R`, `(a, b) ↦ (2 a conj(b), |a|² − |b|²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HopfMap {
    n: usize,
}

impl HopfMap {
    pub fn new(n: usize) -> Result<Self, HopfError> {
        check_n(n)?;
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Raw evaluation on `2n` ambient coordinates; no unit check.
    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        let n = self.n;
        debug_assert_eq!(p.len(), 2 * n);
        let (a, b) = p.split_at(n);
        let mut conj_b = [0.0; 8];
        conj_b[0] = b[0];
        for i in 1..n {
            conj_b[i] = -b[i];
        }
        let mut out = vec![0.0; n + 1];
        cayley_dickson_mul(a, &conj_b[..n], &mut out[..n]);
        for c in &mut out[..n] {
            *c *= 2.0;
        }
        let na: f64 = a.iter().map(|x| x * x).sum();
        let nb: f64 = b.iter().map(|x| x * x).sum();
        out[n] = na - nb;
        out
    }

    /// `dh_{(a,b)}(u, v) = (2 (u conj(b) + a conj(v)), 2 (<a,u> − <b,v>))`.
    pub fn differential(&self, p: &[f64], tangent: &[f64]) -> Vec<f64> {
        let n = self.n;
        let (a, b) = p.split_at(n);
        let (u, v) = tangent.split_at(n);
        let conj = |x: &[f64]| {
            let mut c = [0.0; 8];
            c[0] = x[0];
            for i in 1..n {
                c[i] = -x[i];
            }
            c
        };
        let (cb, cv) = (conj(b), conj(v));
        let mut t1 = [0.0; 8];
        let mut t2 = [0.0; 8];
        cayley_dickson_mul(u, &cb[..n], &mut t1[..n]);
        cayley_dickson_mul(a, &cv[..n], &mut t2[..n]);
        let mut out: Vec<f64> = (0..n).map(|i| 2.0 * (t1[i] + t2[i])).collect();
        let au: f64 = a.iter().zip(u).map(|(x, y)| x * y).sum();
        let bv: f64 = b.iter().zip(v).map(|(x, y)| x * y).sum();
        out.push(2.0 * (au - bv));
        out
    }

    pub fn eval(&self, p: &SpherePoint) -> Result<SpherePoint, HopfError> {
        self.check_domain(p)?;
        Ok(SpherePoint::new(self.apply(p.coords()))?)
    }

    /// Differential on the preferred-chart orthonormal frames at `p` and `h(p)`.
    pub fn jacobian(&self, p: &SpherePoint) -> Result<TangentMap, HopfError> {
        self.check_domain(p)?;
        let q = SpherePoint::from_direction(self.apply(p.coords()))?;
        Ok(tangent_map_from_differential(p, &q, |t| {
            self.differential(p.coords(), t)
        })?)
    }

    fn check_domain(&self, p: &SpherePoint) -> Result<(), HopfError> {
        if p.ambient_dim() != 2 * self.n {
            return Err(HopfError::DomainDimension {
                expected: 2 * self.n,
                found: p.ambient_dim(),
            });
        }
        Ok(())
    }

    /// Splits `2n` coordinates into the algebra pair `(a, b)`.
    pub fn split(&self, p: &[f64]) -> (AlgebraElement, AlgebraElement) {
        let (a, b) = p.split_at(self.n);
        (
            AlgebraElement::from_slice(a).expect("supported dimension"),
            AlgebraElement::from_slice(b).expect("supported dimension"),
        )
    }
}

pub fn hopf_eval(n: usize, p: &SpherePoint) -> Result<SpherePoint, HopfError> {
    HopfMap::new(n)?.eval(p)
}

pub fn hopf_jacobian_analytic(n: usize, p: &SpherePoint) -> Result<TangentMap, HopfError> {
    HopfMap::new(n)?.jacobian(p)
}

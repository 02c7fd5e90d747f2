//! Explicit fibers of the Hopf map.
//!
//! For a target `(y, s) ∈ S^n` with `s > −1` put `α = sqrt((1 + s)/2)`. Then
//! `u ↦ (α u, conj(y) u / (2α))` sends the unit sphere of K onto the fiber:
//! `|a|² − |b|² = α² − |y|²/(4α²) = s`, and
//! `2 a conj(b) = u (conj(u) y) = |u|² y` by alternativity, so no associativity
//! is needed and the octonionic case goes through unchanged. The map is
//! R-linear in `u`, so each fiber is a great `(n−1)`-sphere spanning an
//! `n`-dimensional subspace.

use rand::Rng;

use crate::algebra::AlgebraElement;
use crate::numgeo::svd::{rank_from_singular_values, singular_values, Matrix, ANALYTIC_RANK_TOL};
use crate::numgeo::{random_unit, SpherePoint};

use super::{check_n, HopfError, HopfMap};

/// Targets with height at or below `−1 + EXCLUDED_POLE_MARGIN` are rejected.
pub const EXCLUDED_POLE_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct FiberParametrization {
    n: usize,
    conj_y: AlgebraElement,
    alpha: f64,
}

impl FiberParametrization {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The fiber point over the target for a unit `u ∈ K`.
    pub fn point(&self, u: &AlgebraElement) -> Result<SpherePoint, HopfError> {
        if u.dim() != self.n {
            return Err(HopfError::DomainDimension {
                expected: self.n,
                found: u.dim(),
            });
        }
        let a = u.scale(self.alpha);
        let b = (self.conj_y * *u).scale(0.5 / self.alpha);
        let mut coords = a.coords().to_vec();
        coords.extend_from_slice(b.coords());
        Ok(SpherePoint::new(coords)?)
    }
}

pub fn fiber_parametrize(n: usize, target: &SpherePoint) -> Result<FiberParametrization, HopfError> {
    check_n(n)?;
    if target.ambient_dim() != n + 1 {
        return Err(HopfError::DomainDimension {
            expected: n + 1,
            found: target.ambient_dim(),
        });
    }
    let s = target.height();
    if s <= -1.0 + EXCLUDED_POLE_MARGIN {
        return Err(HopfError::ExcludedPole { height: s });
    }
    let y = AlgebraElement::from_slice(&target.coords()[..n])?;
    Ok(FiberParametrization {
        n,
        conj_y: y.conj(),
        alpha: ((1.0 + s) / 2.0).sqrt(),
    })
}

/// A sampled fiber with its linear-span rank.
#[derive(Debug, Clone)]
pub struct FiberSample {
    pub target: SpherePoint,
    pub points: Vec<SpherePoint>,
    pub linear_rank: usize,
    /// `σ_{n+1} / σ_1` of the uncentered point matrix (0 when `n + 1` exceeds its rank bound).
    pub rank_gap: f64,
    /// Largest coordinate deviation `|h(point) − target|_∞`.
    pub max_residual: f64,
}

pub fn fiber_sample<R: Rng + ?Sized>(
    n: usize,
    target: &SpherePoint,
    count: usize,
    rng: &mut R,
) -> Result<FiberSample, HopfError> {
    let param = fiber_parametrize(n, target)?;
    let h = HopfMap::new(n)?;
    let mut points = Vec::with_capacity(count);
    let mut max_residual: f64 = 0.0;
    for _ in 0..count {
        let u = AlgebraElement::from_slice(random_unit(n, rng)?.coords())?;
        let p = param.point(&u)?;
        let image = h.apply(p.coords());
        for (a, b) in image.iter().zip(target.coords()) {
            max_residual = max_residual.max((a - b).abs());
        }
        points.push(p);
    }
    let rows: Vec<Vec<f64>> = points.iter().map(|p| p.coords().to_vec()).collect();
    let (linear_rank, rank_gap) = if rows.is_empty() {
        (0, 0.0)
    } else {
        let sigma = singular_values(&Matrix::from_rows(&rows))?;
        let gap = if sigma.len() > n && sigma[0] > 0.0 {
            sigma[n] / sigma[0]
        } else {
            0.0
        };
        (rank_from_singular_values(&sigma, ANALYTIC_RANK_TOL), gap)
    };
    Ok(FiberSample {
        target: target.clone(),
        points,
        linear_rank,
        rank_gap,
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn north_fiber_is_first_factor() {
        for n in [2, 4, 8] {
            let param = fiber_parametrize(n, &SpherePoint::pole(n + 1, 1.0)).unwrap();
            let u = AlgebraElement::basis(n, n - 1).unwrap();
            let p = param.point(&u).unwrap();
            assert_eq!(&p.coords()[..n], u.coords());
            assert!(p.coords()[n..].iter().all(|c| *c == 0.0));
        }
    }

    #[test]
    fn equatorial_fiber_maps_to_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in [2, 4, 8] {
            let mut t = vec![0.0; n + 1];
            t[0] = 1.0;
            let target = SpherePoint::new(t).unwrap();
            let sample = fiber_sample(n, &target, 50, &mut rng).unwrap();
            assert!(sample.max_residual < 1e-10);
            // b = u / sqrt(2) when y = 1.
            let param = fiber_parametrize(n, &target).unwrap();
            let u = AlgebraElement::basis(n, 1).unwrap();
            let p = param.point(&u).unwrap();
            assert!((p.coords()[n + 1] - 0.5f64.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn octonion_fiber_spans_eight_dimensions() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let target = random_unit(9, &mut rng).unwrap();
        let sample = fiber_sample(8, &target, 200, &mut rng).unwrap();
        assert_eq!(sample.linear_rank, 8);
        assert!(sample.rank_gap < 1e-9);
    }

    #[test]
    fn south_pole_is_excluded() {
        let err = fiber_parametrize(2, &SpherePoint::pole(3, -1.0));
        assert!(matches!(err, Err(HopfError::ExcludedPole { .. })));
    }
}

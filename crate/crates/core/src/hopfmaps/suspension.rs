//! The smoothed suspension `H: S^{2n} → S^{n+1}` of the Hopf map.
//!
//! With domain coordinates `(x, t)`, `|x|² + t² = 1`, `r = |x|`:
//!
//! ```text
//! H(x, t) = (ψ(r) h(x/r), t) / sqrt(ψ(r)² + t²),     H(0, ±1) = (0, ±1)
//! ```
//!
//! The pair `(ψ h, t)` alone has norm `sqrt(ψ² + t²)`, so it is pushed radially
//! onto the sphere. The denominator never vanishes (`t = 0` forces `r = 1`),
//! and heights keep their sign, so fibers and poles are those of the raw pair.
//!
//! Near the poles every derivative of `H` carries a factor `ψ(r)`, which
//! underflows for `r < 0.04`. [`SuspensionMap::scaled_jacobian`] therefore
//! returns `J_H / ψ(r)` together with `ln ψ(r)`; singular-value ratios are
//! scale free and stay exact arbitrarily close to the poles.

use crate::algebra::AlgebraElement;
use crate::numgeo::svd::Matrix;
use crate::numgeo::{
    dot, euclidean_norm, jacobian_fd, orthonormal_complement, tangent_frame, SpherePoint, TangentMap, FD_STEP,
};

use super::bump::psi_unchecked;
use super::{fiber_parametrize, HopfError, HopfMap};

/// Tolerance on `|x|² + t² = 1` for [`suspension_eval`].
pub const ON_SPHERE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuspensionMap {
    hopf: HopfMap,
}

/// `J_H = exp(log_scale) · map`, with `map` on a meridian/slice domain frame.
#[derive(Debug, Clone)]
pub struct ScaledJacobian {
    pub log_scale: f64,
    pub map: TangentMap,
}

impl ScaledJacobian {
    /// `σ_{n+1} / σ_1`, 0 at the poles.
    pub fn criticality_ratio(&self) -> f64 {
        let s = &self.map.singular_values;
        match (s.first(), s.last()) {
            (Some(&first), Some(&last)) if first > 0.0 => last / first,
            _ => 0.0,
        }
    }

    /// `log10 σ_k(J_H)`, 1-based.
    pub fn log10_sigma(&self, k: usize) -> f64 {
        self.map.sigma(k).log10() + self.log_scale / std::f64::consts::LN_10
    }

    /// `σ_k(J_H)`; may underflow to zero.
    pub fn sigma(&self, k: usize) -> f64 {
        self.map.sigma(k) * self.log_scale.exp()
    }
}

impl SuspensionMap {
    pub fn new(n: usize) -> Result<Self, HopfError> {
        Ok(Self { hopf: HopfMap::new(n)? })
    }

    pub fn n(&self) -> usize {
        self.hopf.n()
    }

    pub fn hopf(&self) -> &HopfMap {
        &self.hopf
    }

    pub fn domain_dim(&self) -> usize {
        2 * self.n() + 1
    }

    pub fn codomain_dim(&self) -> usize {
        self.n() + 2
    }

    /// Raw evaluation on `2n + 1` ambient coordinates `(x, t)`.
    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        let n = self.n();
        let (x, t) = (&p[..2 * n], p[2 * n]);
        let r = euclidean_norm(x);
        let mut out = vec![0.0; n + 2];
        if r == 0.0 {
            out[n + 1] = t.signum();
            return out;
        }
        let psi = psi_unchecked(r.min(1.0));
        let dir: Vec<f64> = x.iter().map(|v| v / r).collect();
        let hv = self.hopf.apply(&dir);
        let norm = (psi * psi + t * t).sqrt();
        for (o, h) in out.iter_mut().zip(&hv) {
            *o = psi * h / norm;
        }
        out[n + 1] = t / norm;
        out
    }

    pub fn eval(&self, p: &SpherePoint) -> Result<SpherePoint, HopfError> {
        self.check_domain(p)?;
        Ok(SpherePoint::from_direction(self.apply(p.coords()))?)
    }

    pub fn jacobian_fd(&self, p: &SpherePoint) -> Result<TangentMap, HopfError> {
        self.check_domain(p)?;
        Ok(jacobian_fd(|x: &[f64]| self.apply(x), p, FD_STEP)?)
    }

    /// Analytic `J_H / ψ(r)` at `p`.
    ///
    /// The domain frame is the unit meridian `(t x̂, −r)` followed by an
    /// orthonormal basis of the slice directions `(v, 0)`, `v ⊥ x̂`; these split
    /// the differential into a radial part and a pure `dh` part with no
    /// cancellation between them. The codomain frame is [`tangent_frame`] at `H(p)`.
    pub fn scaled_jacobian(&self, p: &SpherePoint) -> Result<ScaledJacobian, HopfError> {
        self.check_domain(p)?;
        let n = self.n();
        let coords = p.coords();
        let (x, t) = (&coords[..2 * n], coords[2 * n]);
        let r = euclidean_norm(x);
        if r == 0.0 {
            return Ok(ScaledJacobian {
                log_scale: f64::NEG_INFINITY,
                map: TangentMap::new(Matrix::zeros(n + 1, 2 * n))?,
            });
        }
        let r = r.min(1.0);
        let psi = psi_unchecked(r);
        let kappa = 2.0 / (r * r * r);
        let norm = (psi * psi + t * t).sqrt();
        let norm3 = norm * norm * norm;
        let dir: Vec<f64> = x.iter().map(|v| v / euclidean_norm(x)).collect();
        let hv = self.hopf.apply(&dir);

        let mut columns = Vec::with_capacity(2 * n);
        // Meridian: dx = t x̂, dt = −r, so dr = t and dx̂ = 0.
        let radial = kappa * t / norm - (psi * psi * kappa * t - t * r) / norm3;
        let mut meridian: Vec<f64> = hv.iter().map(|h| radial * h).collect();
        meridian.push(psi * (-r - kappa * t * t) / norm3);
        columns.push(meridian);
        // Slice: dx = v ⊥ x̂, dt = 0, so dr = 0 and dx̂ = v / r.
        for v in orthonormal_complement(&dir) {
            let mut col: Vec<f64> = self
                .hopf
                .differential(&dir, &v)
                .iter()
                .map(|d| d / (r * norm))
                .collect();
            col.push(0.0);
            columns.push(col);
        }

        let q = SpherePoint::from_direction(self.apply(coords))?;
        let frame = tangent_frame(&q);
        let mut m = Matrix::zeros(frame.len(), columns.len());
        for (i, w) in frame.iter().enumerate() {
            for (j, col) in columns.iter().enumerate() {
                m[(i, j)] = dot(w, col);
            }
        }
        Ok(ScaledJacobian {
            log_scale: 1.0 - 1.0 / (r * r),
            map: TangentMap::new(m)?,
        })
    }

    /// `σ_{n+1}(J_H) / σ_1(J_H)` at `p`.
    pub fn criticality_ratio(&self, p: &SpherePoint) -> Result<f64, HopfError> {
        Ok(self.scaled_jacobian(p)?.criticality_ratio())
    }

    /// The preimage point over `target` selected by a unit `u ∈ K`.
    ///
    /// Off the poles the fiber of `H` over `(w, τ)` is `r · F` at height
    /// `sign(τ) sqrt(1 − r²)`, where `F` is the Hopf fiber over `w/|w|` and `r`
    /// solves `sqrt(1 − r²) / ψ(r) = |τ| / |w|`.
    pub fn preimage(&self, target: &SpherePoint, u: &AlgebraElement) -> Result<SpherePoint, HopfError> {
        let n = self.n();
        if target.ambient_dim() != n + 2 {
            return Err(HopfError::DomainDimension {
                expected: n + 2,
                found: target.ambient_dim(),
            });
        }
        let w = &target.coords()[..n + 1];
        let tau = target.height();
        let wn = euclidean_norm(w);
        if wn == 0.0 {
            return Ok(SpherePoint::pole(2 * n + 1, tau));
        }
        let base = SpherePoint::from_direction(w.to_vec())?;
        let hopf_point = fiber_parametrize(n, &base)?.point(u)?;
        let r = solve_radius(tau.abs(), wn);
        let height = tau.signum() * (1.0 - r * r).max(0.0).sqrt();
        let mut coords: Vec<f64> = hopf_point.coords().iter().map(|c| r * c).collect();
        coords.push(if tau == 0.0 { 0.0 } else { height });
        Ok(SpherePoint::from_direction(coords)?)
    }

    fn check_domain(&self, p: &SpherePoint) -> Result<(), HopfError> {
        if p.ambient_dim() != self.domain_dim() {
            return Err(HopfError::DomainDimension {
                expected: self.domain_dim(),
                found: p.ambient_dim(),
            });
        }
        Ok(())
    }
}

/// Solves `sqrt(1 − r²) / ψ(r) = tau / w` on `(0, 1]` by bisection in log space.
fn solve_radius(tau: f64, w: f64) -> f64 {
    if tau == 0.0 {
        return 1.0;
    }
    let target = tau.ln() - w.ln();
    // ln g(r) = ½ ln(1 − r²) − 1 + 1/r², strictly decreasing from +∞ to −∞.
    let ln_g = |r: f64| 0.5 * (1.0 - r * r).ln() - 1.0 + 1.0 / (r * r);
    let (mut lo, mut hi) = (f64::MIN_POSITIVE.sqrt(), 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ln_g(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Evaluates `H(x, t)`; the input must satisfy `|x|² + t² = 1` within [`ON_SPHERE_TOL`].
pub fn suspension_eval(n: usize, x: &[f64], t: f64) -> Result<SpherePoint, HopfError> {
    let map = SuspensionMap::new(n)?;
    if x.len() != 2 * n {
        return Err(HopfError::DomainDimension {
            expected: 2 * n,
            found: x.len(),
        });
    }
    let sq = x.iter().map(|v| v * v).sum::<f64>() + t * t;
    if !sq.is_finite() || (sq - 1.0).abs() > ON_SPHERE_TOL {
        return Err(HopfError::OffSphere { norm: sq.sqrt() });
    }
    let mut p = x.to_vec();
    p.push(t);
    map.eval(&SpherePoint::from_direction(p)?)
}

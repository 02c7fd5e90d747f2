//! Differentials of sphere maps expressed on orthonormal tangent frames.
//!
//! Both the finite-difference and the analytic routes use the frame that
//! [`Chart::frame`](super::Chart::frame) produces in each point's preferred
//! chart, so their matrices are directly comparable entry by entry.

use super::svd::{rank_from_singular_values, singular_values, Matrix};
use super::{dot, Chart, NumGeoError, SpherePoint};

/// Central-difference step in chart coordinates.
pub const FD_STEP: f64 = 1e-5;

/// Differential of a map between spheres on orthonormal tangent frames,
/// `codomain_dim - 1` rows by `domain_dim - 1` columns.
#[derive(Debug, Clone)]
pub struct TangentMap {
    pub matrix: Matrix,
    /// Descending; `min(rows, cols)` entries.
    pub singular_values: Vec<f64>,
}

impl TangentMap {
    pub fn new(matrix: Matrix) -> Result<Self, NumGeoError> {
        let singular_values = singular_values(&matrix)?;
        Ok(Self {
            matrix,
            singular_values,
        })
    }

    pub fn rank(&self, rel_tol: f64) -> usize {
        rank_from_singular_values(&self.singular_values, rel_tol)
    }

    /// The `k`-th singular value, 1-based, or 0 past the end.
    pub fn sigma(&self, k: usize) -> f64 {
        self.singular_values.get(k - 1).copied().unwrap_or(0.0)
    }
}

pub fn rank_with_tol(map: &TangentMap, rel_tol: f64) -> usize {
    map.rank(rel_tol)
}

/// Central-difference Jacobian of `f` at `p`, using each point's preferred chart.
pub fn jacobian_fd<F>(f: F, p: &SpherePoint, step: f64) -> Result<TangentMap, NumGeoError>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let q = SpherePoint::from_direction(f(p.coords()))?;
    jacobian_fd_in_charts(f, p, Chart::for_point(p), Chart::for_point(&q), step)
}

/// Central differences of the chart representative `codomain ∘ f ∘ domain⁻¹`,
/// rescaled by the conformal factors so the result lives on orthonormal frames.
pub fn jacobian_fd_in_charts<F>(
    f: F,
    p: &SpherePoint,
    domain: Chart,
    codomain: Chart,
    step: f64,
) -> Result<TangentMap, NumGeoError>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    if !(step > 0.0 && step.is_finite()) {
        return Err(NumGeoError::InvalidStep(step));
    }
    let y0 = domain.forward(p)?;
    let q = SpherePoint::from_direction(f(p.coords()))?;
    let z0 = codomain.forward(&q)?;
    let chart_image = |y: &[f64]| -> Result<Vec<f64>, NumGeoError> {
        let image = SpherePoint::from_direction(f(domain.backward(y).coords()))?;
        codomain.forward(&image)
    };

    let rows = z0.len();
    let cols = y0.len();
    let mut m = Matrix::zeros(rows, cols);
    let mut y = y0.clone();
    for j in 0..cols {
        y[j] = y0[j] + step;
        let plus = chart_image(&y)?;
        y[j] = y0[j] - step;
        let minus = chart_image(&y)?;
        y[j] = y0[j];
        for i in 0..rows {
            m[(i, j)] = (plus[i] - minus[i]) / (2.0 * step);
        }
    }
    let ratio = codomain.conformal_factor(&z0) / domain.conformal_factor(&y0);
    TangentMap::new(m.scaled(ratio))
}

/// Builds the tangent map at `p` from an ambient differential `diff`, which sends a
/// tangent vector at `p` to a tangent vector at `q = f(p)`.
pub fn tangent_map_from_differential<D>(p: &SpherePoint, q: &SpherePoint, diff: D) -> Result<TangentMap, NumGeoError>
where
    D: Fn(&[f64]) -> Vec<f64>,
{
    let domain_frame = super::tangent_frame(p);
    let codomain_frame = super::tangent_frame(q);
    let images: Vec<Vec<f64>> = domain_frame.iter().map(|u| diff(u)).collect();
    let mut m = Matrix::zeros(codomain_frame.len(), domain_frame.len());
    for (i, w) in codomain_frame.iter().enumerate() {
        for (j, image) in images.iter().enumerate() {
            m[(i, j)] = dot(w, image);
        }
    }
    TangentMap::new(m)
}

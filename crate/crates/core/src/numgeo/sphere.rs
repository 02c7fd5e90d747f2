use rand::Rng;
use rand_distr::StandardNormal;

use super::NumGeoError;

/// Unit-norm tolerance enforced by [`SpherePoint::new`].
pub const UNIT_TOL: f64 = 1e-10;

/// Minimum geodesic distance from the pole for a chart evaluation.
pub const CHART_POLE_CLEARANCE: f64 = 1e-3;

/// A unit vector in `R^{ambient_dim}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    /// Accepts coordinates already on the sphere (within [`UNIT_TOL`]) and renormalizes them.
    pub fn new(coords: Vec<f64>) -> Result<Self, NumGeoError> {
        if coords.len() < 2 {
            return Err(NumGeoError::DimensionTooSmall(coords.len()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(NumGeoError::NonFinite);
        }
        let norm = euclidean_norm(&coords);
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(NumGeoError::NotUnit { norm });
        }
        Ok(Self::normalize(coords))
    }

    /// Projects any nonzero vector radially onto the sphere.
    pub fn from_direction(coords: Vec<f64>) -> Result<Self, NumGeoError> {
        if coords.len() < 2 {
            return Err(NumGeoError::DimensionTooSmall(coords.len()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(NumGeoError::NonFinite);
        }
        if euclidean_norm(&coords) == 0.0 {
            return Err(NumGeoError::NotUnit { norm: 0.0 });
        }
        Ok(Self::normalize(coords))
    }

    /// The pole `(0, …, 0, sign)`.
    pub fn pole(ambient_dim: usize, sign: f64) -> Self {
        let mut coords = vec![0.0; ambient_dim];
        coords[ambient_dim - 1] = sign.signum();
        Self { coords }
    }

    fn normalize(mut coords: Vec<f64>) -> Self {
        let norm = euclidean_norm(&coords);
        for c in &mut coords {
            *c /= norm;
        }
        Self { coords }
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// The last coordinate.
    pub fn height(&self) -> f64 {
        self.coords[self.coords.len() - 1]
    }

    /// Great-circle distance, accurate for nearby points.
    pub fn geodesic_distance(&self, other: &SpherePoint) -> f64 {
        let chord = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        2.0 * (0.5 * chord).min(1.0).asin()
    }
}

pub fn euclidean_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Uniform point on the unit sphere in `R^{ambient_dim}` by Gaussian normalization.
pub fn random_unit<R: Rng + ?Sized>(ambient_dim: usize, rng: &mut R) -> Result<SpherePoint, NumGeoError> {
    if ambient_dim < 2 {
        return Err(NumGeoError::DimensionTooSmall(ambient_dim));
    }
    loop {
        let v: Vec<f64> = (0..ambient_dim).map(|_| rng.sample(StandardNormal)).collect();
        if euclidean_norm(&v) > 1e-150 {
            return Ok(SpherePoint::normalize(v));
        }
    }
}

/// Stereographic projection from `(0, …, 0, pole_sign)` onto `R^{d-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chart {
    ambient_dim: usize,
    pole_sign: f64,
}

impl Chart {
    pub fn from_north(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            pole_sign: 1.0,
        }
    }

    pub fn from_south(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            pole_sign: -1.0,
        }
    }

    /// The chart whose pole is farther from `p`.
    pub fn for_point(p: &SpherePoint) -> Self {
        if p.height() >= 0.0 {
            Self::from_south(p.ambient_dim())
        } else {
            Self::from_north(p.ambient_dim())
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn pole(&self) -> SpherePoint {
        SpherePoint::pole(self.ambient_dim, self.pole_sign)
    }

    pub fn forward(&self, p: &SpherePoint) -> Result<Vec<f64>, NumGeoError> {
        if p.ambient_dim() != self.ambient_dim {
            return Err(NumGeoError::DimensionMismatch {
                expected: self.ambient_dim,
                found: p.ambient_dim(),
            });
        }
        let distance = p.geodesic_distance(&self.pole());
        if distance < CHART_POLE_CLEARANCE {
            return Err(NumGeoError::NearPole { distance });
        }
        let d = self.ambient_dim;
        let denom = 1.0 - self.pole_sign * p.coords[d - 1];
        Ok(p.coords[..d - 1].iter().map(|x| x / denom).collect())
    }

    pub fn backward(&self, y: &[f64]) -> SpherePoint {
        debug_assert_eq!(y.len() + 1, self.ambient_dim);
        let r2: f64 = y.iter().map(|v| v * v).sum();
        let denom = 1.0 + r2;
        let mut coords: Vec<f64> = y.iter().map(|v| 2.0 * v / denom).collect();
        coords.push(self.pole_sign * (r2 - 1.0) / denom);
        SpherePoint { coords }
    }

    /// Length scale of the inverse chart: `d backward(y)` maps unit vectors to length `2 / (1 + |y|^2)`.
    pub fn conformal_factor(&self, y: &[f64]) -> f64 {
        2.0 / (1.0 + y.iter().map(|v| v * v).sum::<f64>())
    }

    /// Orthonormal tangent frame at `backward(y)`: the normalized columns of `d backward(y)`.
    pub fn frame(&self, y: &[f64]) -> Vec<Vec<f64>> {
        let r2: f64 = y.iter().map(|v| v * v).sum();
        let denom = 1.0 + r2;
        (0..y.len())
            .map(|j| {
                let mut col: Vec<f64> = y.iter().map(|yi| -2.0 * yi * y[j] / denom).collect();
                col[j] += 1.0;
                col.push(2.0 * self.pole_sign * y[j] / denom);
                col
            })
            .collect()
    }
}

/// Orthonormal tangent frame at `p` taken from its preferred chart.
pub fn tangent_frame(p: &SpherePoint) -> Vec<Vec<f64>> {
    let chart = Chart::for_point(p);
    let y = chart
        .forward(p)
        .expect("the preferred chart is a hemisphere away from its pole");
    chart.frame(&y)
}

/// Orthonormal basis of the hyperplane orthogonal to the unit vector `v`, from a
/// Householder reflection that sends a coordinate axis to `±v`.
pub fn orthonormal_complement(v: &[f64]) -> Vec<Vec<f64>> {
    let k = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(i, _)| i)
        .expect("nonempty vector");
    let sign = if v[k] >= 0.0 { 1.0 } else { -1.0 };
    let mut w: Vec<f64> = v.iter().map(|x| sign * x).collect();
    w[k] += 1.0;
    let w2: f64 = w.iter().map(|x| x * x).sum();
    (0..v.len())
        .filter(|&i| i != k)
        .map(|i| {
            let coef = 2.0 * w[i] / w2;
            let mut col: Vec<f64> = w.iter().map(|wj| -coef * wj).collect();
            col[i] += 1.0;
            col
        })
        .collect()
}

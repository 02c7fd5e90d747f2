//! Numerical kernel for maps between round spheres: sampling, stereographic
//! charts, tangent-frame Jacobians and a small dense SVD with rank decisions.

mod jacobian;
mod sphere;
pub mod svd;

use thiserror::Error;

pub use jacobian::{
    jacobian_fd, jacobian_fd_in_charts, rank_with_tol, tangent_map_from_differential, TangentMap, FD_STEP,
};
pub use sphere::{
    dot, euclidean_norm, orthonormal_complement, random_unit, tangent_frame, Chart, SpherePoint, CHART_POLE_CLEARANCE,
    UNIT_TOL,
};
pub use svd::{svd, Matrix, Svd};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumGeoError {
    #[error("non-finite matrix or coordinate entry")]
    NonFinite,
    #[error("point is {distance:.3e} from the chart pole")]
    NearPole { distance: f64 },
    #[error("vector of norm {norm} is not on the unit sphere")]
    NotUnit { norm: f64 },
    #[error("ambient dimension {0} is too small for a sphere")]
    DimensionTooSmall(usize),
    #[error("expected ambient dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("finite-difference step must be positive and finite, got {0}")]
    InvalidStep(f64),
}

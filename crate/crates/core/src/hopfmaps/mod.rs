//! Hopf fibrations over C, H, O, the flat bump `ψ`, the smoothed suspension
//! `H: S^{2n} → S^{n+1}`, explicit fibers, and the critical-point scanner.

mod bump;
mod fiber;
mod hopf;
mod scan;
mod suspension;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::numgeo::NumGeoError;

pub use bump::{ln_psi, psi, psi_derivative};
pub use fiber::{fiber_parametrize, fiber_sample, FiberParametrization, FiberSample, EXCLUDED_POLE_MARGIN};
pub use hopf::{check_n, hopf_eval, hopf_jacobian_analytic, HopfMap, SUPPORTED_N};
pub use scan::{
    critical_scan, sample_sigma_floor, CandidateStatus, CriticalPoint, RefinedCandidate, ScanConfig, ScanOutcome,
    SigmaFloor, CRITICAL_RATIO_TOL, MERGE_DISTANCE,
};
pub use suspension::{suspension_eval, ScaledJacobian, SuspensionMap, ON_SPHERE_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HopfError {
    #[error("unsupported n = {0}; expected 2, 4 or 8")]
    UnsupportedN(usize),
    #[error("expected {expected} coordinates, found {found}")]
    DomainDimension { expected: usize, found: usize },
    #[error("psi is defined on [0, 1], got {0}")]
    PsiDomain(f64),
    #[error("target at height {height} is the excluded pole")]
    ExcludedPole { height: f64 },
    #[error("input has norm {norm}, not on the unit sphere")]
    OffSphere { norm: f64 },
    #[error("invalid scan configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    NumGeo(#[from] NumGeoError),
}

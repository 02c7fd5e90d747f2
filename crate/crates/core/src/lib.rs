//! Numerical and symbolic verification of the minimal critical-point count of
//! maps `Σ^{2n} #_e S^n×S^n #_c S^1×S^{2n-1} → #_c S^1×S^n` for `n ∈ {2, 4, 8}`.
//!
//! The numerical side ([`algebra`], [`numgeo`], [`hopfmaps`]) realizes the
//! Hopf maps over R, C, H, O and their smoothed suspensions, and locates the
//! critical points of the suspension. The symbolic side ([`homcalc`],
//! [`fibersum`]) assembles fiber sums along multigraphs and evaluates the
//! homological lower bound, and [`fibersum::phi_verdict`] joins the two.

pub mod algebra;
pub mod cli;
pub mod fibersum;
pub mod homcalc;
pub mod hopfmaps;
pub mod numgeo;

pub use algebra::{AlgebraElement, AlgebraError};
pub use numgeo::{NumGeoError, SpherePoint, TangentMap};

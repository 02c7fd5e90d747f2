//! Critical points of the suspension `H` by stratified sampling and local refinement.
//!
//! The coarse grid is stratified by height: `L` levels at polar angles
//! `π(i + ½)/L`, each with `8L` random directions in `S^{2n−1}`. Levels whose
//! best criticality ratio is a discrete local minimum become candidates and are
//! refined by damped Gauss–Newton on `sqrt(ρ)`, `ρ = σ_{n+1}/σ_1`, in the
//! stereographic chart that keeps the start point away from its pole.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::numgeo::{random_unit, Chart, SpherePoint};

use super::{HopfError, SuspensionMap};

/// A refined point is critical when `σ_{n+1} / σ_1` falls below this.
pub const CRITICAL_RATIO_TOL: f64 = 1e-6;

/// Critical points closer than this (geodesic) are merged.
pub const MERGE_DISTANCE: f64 = 1e-3;

const MAX_STEP: f64 = 0.1;
const MIN_DAMPING: f64 = 1.0 / 1024.0;
const FLOOR_HEIGHT: f64 = 0.99;

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    /// Height levels `L`; each level carries `8L` directions.
    pub grid_density: usize,
    pub seed: u64,
    /// Refinement stops once an accepted chart step is shorter than this.
    pub refine_tol: f64,
    pub max_iter: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            grid_density: 32,
            seed: 0,
            refine_tol: 1e-9,
            max_iter: 200,
        }
    }
}

impl ScanConfig {
    pub fn directions_per_level(&self) -> usize {
        8 * self.grid_density
    }

    fn validate(&self) -> Result<(), HopfError> {
        if self.grid_density == 0 {
            return Err(HopfError::InvalidConfig("grid density must be at least 1".into()));
        }
        if !(self.refine_tol > 0.0 && self.refine_tol <= 1e-6) {
            return Err(HopfError::InvalidConfig(format!(
                "refine tolerance must lie in (0, 1e-6], got {}",
                self.refine_tol
            )));
        }
        if self.max_iter == 0 {
            return Err(HopfError::InvalidConfig("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateStatus {
    /// Last accepted step fell below `refine_tol`, or the residual reached zero.
    Converged,
    /// No damped step decreased the residual.
    Stationary,
    MaxIterations,
}

impl CandidateStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Converged => "converged",
            Self::Stationary => "stationary",
            Self::MaxIterations => "max_iterations",
        }
    }
}

#[derive(Debug, Clone)]
pub struct LevelSummary {
    pub height: f64,
    pub min_ratio: f64,
    /// `log10 σ_{n+1}(J_H)` minimized over the level.
    pub min_log10_sigma: f64,
    best: SpherePoint,
}

#[derive(Debug, Clone)]
pub struct RefinedCandidate {
    pub level: usize,
    pub start_height: f64,
    pub point: SpherePoint,
    pub ratio: f64,
    pub iterations: usize,
    pub status: CandidateStatus,
}

impl RefinedCandidate {
    pub fn is_critical(&self) -> bool {
        self.ratio < CRITICAL_RATIO_TOL
    }
}

#[derive(Debug, Clone)]
pub struct CriticalPoint {
    pub point: SpherePoint,
    /// `σ_{n+1} / σ_1` at the point.
    pub ratio: f64,
    /// `log10 σ_{n+1}(J_H)`, `−∞` exactly at a pole.
    pub log10_sigma: f64,
}

impl CriticalPoint {
    pub fn height(&self) -> f64 {
        self.point.height()
    }

    /// Geodesic distance to the nearer pole.
    pub fn pole_distance(&self) -> f64 {
        let d = self.point.ambient_dim();
        let north = self.point.geodesic_distance(&SpherePoint::pole(d, 1.0));
        let south = self.point.geodesic_distance(&SpherePoint::pole(d, -1.0));
        north.min(south)
    }
}

/// Smallest `σ_{n+1}(J_H)` seen over a set of samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaFloor {
    pub samples: usize,
    pub min_sigma: f64,
    pub min_log10_sigma: f64,
    pub at_height: f64,
}

impl SigmaFloor {
    fn empty() -> Self {
        Self {
            samples: 0,
            min_sigma: f64::INFINITY,
            min_log10_sigma: f64::INFINITY,
            at_height: f64::NAN,
        }
    }

    fn push(&mut self, log10_sigma: f64, height: f64) {
        self.samples += 1;
        if log10_sigma < self.min_log10_sigma {
            self.min_log10_sigma = log10_sigma;
            self.min_sigma = 10f64.powf(log10_sigma);
            self.at_height = height;
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.samples += other.samples;
        if other.min_log10_sigma < self.min_log10_sigma {
            self.min_log10_sigma = other.min_log10_sigma;
            self.min_sigma = other.min_sigma;
            self.at_height = other.at_height;
        }
        self
    }
}

#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub n: usize,
    pub config: ScanConfig,
    pub levels: Vec<LevelSummary>,
    pub candidates: Vec<RefinedCandidate>,
    /// Merged and sorted by height, then lexicographically.
    pub critical_points: Vec<CriticalPoint>,
    /// Coarse-grid floor over `|t| ≤ 0.99`.
    pub away_floor: SigmaFloor,
    pub warnings: Vec<String>,
}

pub fn critical_scan(map: &SuspensionMap, config: &ScanConfig) -> Result<ScanOutcome, HopfError> {
    config.validate()?;
    let mut warnings = Vec::new();
    if config.grid_density < 8 {
        warnings.push(format!(
            "grid density {} is below the recommended minimum of 8; candidates are still refined",
            config.grid_density
        ));
    }

    let levels_count = config.grid_density;
    let levels: Vec<(LevelSummary, SigmaFloor)> = (0..levels_count)
        .into_par_iter()
        .map(|i| scan_level(map, config, i))
        .collect::<Result<_, _>>()?;
    let away_floor = levels.iter().fold(SigmaFloor::empty(), |acc, (_, f)| acc.merge(*f));
    let levels: Vec<LevelSummary> = levels.into_iter().map(|(l, _)| l).collect();

    let candidate_levels: Vec<usize> = (0..levels.len())
        .filter(|&i| {
            let r = levels[i].min_ratio;
            let left = i == 0 || r <= levels[i - 1].min_ratio;
            let right = i + 1 == levels.len() || r <= levels[i + 1].min_ratio;
            left && right
        })
        .collect();

    let candidates: Vec<RefinedCandidate> = candidate_levels
        .par_iter()
        .map(|&i| refine(map, config, i, &levels[i]))
        .collect::<Result<_, _>>()?;

    let mut critical: Vec<CriticalPoint> = Vec::new();
    for c in candidates.iter().filter(|c| c.is_critical()) {
        if critical
            .iter()
            .any(|p| p.point.geodesic_distance(&c.point) < MERGE_DISTANCE)
        {
            continue;
        }
        let scaled = map.scaled_jacobian(&c.point)?;
        critical.push(CriticalPoint {
            point: c.point.clone(),
            ratio: c.ratio,
            log10_sigma: scaled.log10_sigma(map.n() + 1),
        });
    }
    critical.sort_by(|a, b| {
        a.height()
            .total_cmp(&b.height())
            .then_with(|| lex_cmp(a.point.coords(), b.point.coords()))
    });

    Ok(ScanOutcome {
        n: map.n(),
        config: config.clone(),
        levels,
        candidates,
        critical_points: critical,
        away_floor,
        warnings,
    })
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

fn point_at(dir: &SpherePoint, theta: f64) -> Result<SpherePoint, HopfError> {
    let (s, c) = theta.sin_cos();
    let mut coords: Vec<f64> = dir.coords().iter().map(|v| v * s).collect();
    coords.push(c);
    Ok(SpherePoint::from_direction(coords)?)
}

fn scan_level(map: &SuspensionMap, config: &ScanConfig, level: usize) -> Result<(LevelSummary, SigmaFloor), HopfError> {
    let theta = std::f64::consts::PI * (level as f64 + 0.5) / config.grid_density as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(level as u64);
    let n = map.n();
    let mut floor = SigmaFloor::empty();
    let mut best: Option<(f64, SpherePoint)> = None;
    let mut min_log10_sigma = f64::INFINITY;
    for _ in 0..config.directions_per_level() {
        let p = point_at(&random_unit(2 * n, &mut rng)?, theta)?;
        let scaled = map.scaled_jacobian(&p)?;
        let ratio = scaled.criticality_ratio();
        let log10_sigma = scaled.log10_sigma(n + 1);
        min_log10_sigma = min_log10_sigma.min(log10_sigma);
        if p.height().abs() <= FLOOR_HEIGHT {
            floor.push(log10_sigma, p.height());
        }
        if best.as_ref().is_none_or(|(r, _)| ratio < *r) {
            best = Some((ratio, p));
        }
    }
    let (min_ratio, best) = best.expect("at least one direction per level");
    Ok((
        LevelSummary {
            height: theta.cos(),
            min_ratio,
            min_log10_sigma,
            best,
        },
        floor,
    ))
}

fn refine(
    map: &SuspensionMap,
    config: &ScanConfig,
    level: usize,
    summary: &LevelSummary,
) -> Result<RefinedCandidate, HopfError> {
    let chart = Chart::for_point(&summary.best);
    let residual = |y: &[f64]| -> Result<f64, HopfError> { Ok(map.criticality_ratio(&chart.backward(y))?.sqrt()) };
    let mut y = chart.forward(&summary.best)?;
    let mut s = residual(&y)?;
    let mut status = CandidateStatus::MaxIterations;
    let mut iterations = 0;
    while iterations < config.max_iter {
        if s == 0.0 {
            status = CandidateStatus::Converged;
            break;
        }
        iterations += 1;
        let delta = (0.1 * s).clamp(1e-12, 1e-4);
        let mut grad = vec![0.0; y.len()];
        for i in 0..y.len() {
            let mut yp = y.clone();
            let mut ym = y.clone();
            yp[i] += delta;
            ym[i] -= delta;
            grad[i] = (residual(&yp)? - residual(&ym)?) / (2.0 * delta);
        }
        let g2: f64 = grad.iter().map(|g| g * g).sum();
        if g2 == 0.0 || !g2.is_finite() {
            status = CandidateStatus::Stationary;
            break;
        }
        let mut step: Vec<f64> = grad.iter().map(|g| -s * g / g2).collect();
        let len = step.iter().map(|v| v * v).sum::<f64>().sqrt();
        if len > MAX_STEP {
            step.iter_mut().for_each(|v| *v *= MAX_STEP / len);
        }
        let mut damping = 1.0;
        let mut accepted = None;
        while damping >= MIN_DAMPING {
            let trial: Vec<f64> = y.iter().zip(&step).map(|(a, b)| a + damping * b).collect();
            let st = residual(&trial)?;
            if st < s {
                accepted = Some((trial, st, damping));
                break;
            }
            damping *= 0.5;
        }
        match accepted {
            Some((trial, st, damping)) => {
                y = trial;
                s = st;
                if damping * len.min(MAX_STEP) < config.refine_tol {
                    status = CandidateStatus::Converged;
                    break;
                }
            }
            None => {
                status = CandidateStatus::Stationary;
                break;
            }
        }
    }
    let point = chart.backward(&y);
    Ok(RefinedCandidate {
        level,
        start_height: summary.height,
        ratio: map.criticality_ratio(&point)?,
        point,
        iterations,
        status,
    })
}

/// Minimum `σ_{n+1}(J_H)` over `samples` points with height uniform in
/// `[−t_max, t_max]` and uniform direction, from the finite-difference Jacobian
/// (`finite_difference = true`) or the scaled analytic one.
pub fn sample_sigma_floor(
    map: &SuspensionMap,
    samples: usize,
    t_max: f64,
    seed: u64,
    finite_difference: bool,
) -> Result<SigmaFloor, HopfError> {
    const CHUNK: usize = 1024;
    let n = map.n();
    let chunks = samples.div_ceil(CHUNK);
    let floors: Vec<SigmaFloor> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let mut floor = SigmaFloor::empty();
            let count = CHUNK.min(samples - k * CHUNK);
            for _ in 0..count {
                let t: f64 = rand::Rng::gen_range(&mut rng, -t_max..=t_max);
                let dir = random_unit(2 * n, &mut rng)?;
                let p = point_at(&dir, t.acos())?;
                let log10_sigma = if finite_difference {
                    map.jacobian_fd(&p)?.sigma(n + 1).log10()
                } else {
                    map.scaled_jacobian(&p)?.log10_sigma(n + 1)
                };
                floor.push(log10_sigma, t);
            }
            Ok(floor)
        })
        .collect::<Result<_, HopfError>>()?;
    Ok(floors.into_iter().fold(SigmaFloor::empty(), SigmaFloor::merge))
}

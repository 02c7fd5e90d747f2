use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::AlgebraElement;
use crate::fibersum::{assemble, enumerate_graphs, phi_verdict, FiberSumGraph, SigmaKind};
use crate::homcalc::{lower_bound, parse_descriptor, BoundVerdict};
use crate::hopfmaps::{
    critical_scan, fiber_sample, sample_sigma_floor, HopfMap, ScanConfig, SuspensionMap, EXCLUDED_POLE_MARGIN,
};
use crate::numgeo::{euclidean_norm, jacobian_fd, random_unit, SpherePoint, FD_STEP};

use super::{Check, Command, Report, SigmaArg, UsageError};

const FD_POINTS: usize = 1000;
const FIBER_TARGETS: usize = 100;
const FIBER_POINTS: usize = 200;
const FIBER_RESIDUAL_TOL: f64 = 1e-10;
const FIBER_GAP_TOL: f64 = 1e-9;
const FLOOR_HEIGHT: f64 = 0.99;

pub fn execute(cmd: &Command) -> Result<Report, UsageError> {
    match cmd {
        Command::VerifyHopf {
            hopf,
            samples,
            tol,
            sv_tol,
            fd_tol,
        } => verify_hopf(hopf.n, hopf.seed, *samples, *tol, *sv_tol, *fd_tol),
        Command::CriticalPoints {
            hopf,
            grid,
            refine_tol,
            max_iter,
            tol,
            floor,
            samples,
        } => critical_points(
            hopf.n,
            ScanConfig {
                grid_density: *grid,
                seed: hopf.seed,
                refine_tol: *refine_tol,
                max_iter: *max_iter,
            },
            *tol,
            *floor,
            *samples,
        ),
        Command::Fiber {
            hopf,
            samples,
            target,
            points,
            tol,
        } => fiber(hopf.n, hopf.seed, *samples, target.as_deref(), *points, *tol),
        Command::Phi {
            e,
            c,
            n,
            sigma,
            assume_embedding,
        } => phi(*e, *c, *n, *sigma, *assume_embedding),
        Command::GraphSum { graph, n } => {
            let text = std::fs::read_to_string(graph)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", graph.display())))?;
            graph_sum(&text, &graph.display().to_string(), *n)
        }
        Command::LowerBound { manifold, n } => lower_bound_cmd(manifold, *n),
        Command::EnumerateGraphs { max_edges, n, list } => enumerate(*max_edges, *n, *list),
    }
}

fn verify_hopf(n: usize, seed: u64, samples: usize, tol: f64, sv_tol: f64, fd_tol: f64) -> Result<Report, UsageError> {
    let mut report = Report::new(
        "verify-hopf",
        json!({ "n": n, "seed": seed, "samples": samples, "tol": tol, "sv_tol": sv_tol, "fd_tol": fd_tol }),
    );
    if samples == 0 {
        report
            .warnings
            .push("no samples requested; every check passes vacuously".into());
    }
    let h = HopfMap::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<SpherePoint> = (0..samples)
        .map(|_| random_unit(2 * n, &mut rng))
        .collect::<Result<_, _>>()?;

    let mut norm_dev: f64 = 0.0;
    let mut sv_dev: f64 = 0.0;
    let mut min_rank = usize::MAX;
    for p in &points {
        norm_dev = norm_dev.max((euclidean_norm(&h.apply(p.coords())) - 1.0).abs());
        let jac = h.jacobian(p)?;
        for s in &jac.singular_values {
            sv_dev = sv_dev.max((s - 2.0).abs());
        }
        min_rank = min_rank.min(jac.rank(crate::numgeo::svd::ANALYTIC_RANK_TOL));
    }
    let mut fd_dev: f64 = 0.0;
    for p in points.iter().take(FD_POINTS) {
        let a = h.jacobian(p)?;
        let f = jacobian_fd(|x: &[f64]| h.apply(x), p, FD_STEP)?;
        fd_dev = fd_dev.max(a.matrix.sub(&f.matrix).max_abs() / a.matrix.max_abs());
    }
    let mut fiber_residual: f64 = 0.0;
    let mut fiber_bad_rank = 0;
    let mut fiber_gap: f64 = 0.0;
    let targets = samples.min(FIBER_TARGETS);
    for _ in 0..targets {
        let target = regular_target(n, &mut rng)?;
        let s = fiber_sample(n, &target, FIBER_POINTS, &mut rng)?;
        fiber_residual = fiber_residual.max(s.max_residual);
        fiber_gap = fiber_gap.max(s.rank_gap);
        fiber_bad_rank += usize::from(s.linear_rank != n);
    }

    report.check(Check::new("norm", norm_dev <= tol, norm_dev, tol, "max | |h(p)| - 1 |"));
    report.check(Check::new(
        "submersion_homothety",
        sv_dev <= sv_tol,
        sv_dev,
        sv_tol,
        "max |sigma_i(dh) - 2|",
    ));
    report.check(Check::new(
        "submersion_rank",
        samples == 0 || min_rank == n,
        if samples == 0 { Value::Null } else { json!(min_rank) },
        n,
        "min rank of dh",
    ));
    report.check(Check::new(
        "fd_vs_analytic",
        fd_dev < fd_tol,
        fd_dev,
        fd_tol,
        format!("max relative deviation over {} points", samples.min(FD_POINTS)),
    ));
    report.check(Check::new(
        "fiber_residual",
        fiber_residual <= FIBER_RESIDUAL_TOL,
        fiber_residual,
        FIBER_RESIDUAL_TOL,
        format!("{targets} targets x {FIBER_POINTS} points"),
    ));
    report.check(Check::new(
        "fiber_rank",
        fiber_bad_rank == 0 && fiber_gap < FIBER_GAP_TOL,
        fiber_gap,
        FIBER_GAP_TOL,
        format!("sigma_(n+1)/sigma_1 of the point matrix; {fiber_bad_rank} targets off rank {n}"),
    ));
    report.line(format!("n = {n}, {samples} samples, seed {seed}"));
    report.data = json!({
        "max_norm_deviation": norm_dev,
        "max_singular_value_deviation": sv_dev,
        "max_fd_relative_deviation": fd_dev,
        "fiber_targets": targets,
        "max_fiber_residual": fiber_residual,
        "max_fiber_rank_gap": fiber_gap,
    });
    Ok(report)
}

fn regular_target(n: usize, rng: &mut ChaCha8Rng) -> Result<SpherePoint, UsageError> {
    loop {
        let t = random_unit(n + 1, rng)?;
        if t.height() > -1.0 + EXCLUDED_POLE_MARGIN {
            return Ok(t);
        }
    }
}

fn critical_points(n: usize, cfg: ScanConfig, tol: f64, floor: f64, samples: usize) -> Result<Report, UsageError> {
    let mut report = Report::new(
        "critical-points",
        json!({
            "n": n,
            "seed": cfg.seed,
            "grid": cfg.grid_density,
            "directions_per_level": cfg.directions_per_level(),
            "refine_tol": cfg.refine_tol,
            "max_iter": cfg.max_iter,
            "tol": tol,
            "floor": floor,
            "samples": samples,
        }),
    );
    let map = SuspensionMap::new(n)?;
    let out = critical_scan(&map, &cfg)?;
    report.warnings.extend(out.warnings.iter().cloned());
    for c in out.candidates.iter().filter(|c| c.status.as_str() == "max_iterations") {
        report
            .warnings
            .push(format!("refinement from level {} did not converge", c.level));
    }

    let count = out.critical_points.len();
    report.check(Check::new(
        "critical_count",
        count == 2,
        count,
        2,
        "critical points after merging",
    ));
    let worst = out
        .critical_points
        .iter()
        .map(|p| p.pole_distance())
        .fold(0.0, f64::max);
    report.check(Check::new(
        "at_poles",
        count > 0 && worst < tol,
        worst,
        tol,
        "max geodesic distance to the nearer pole",
    ));
    report.check(Check::new(
        "grid_floor",
        out.away_floor.min_sigma >= floor,
        out.away_floor.min_sigma,
        floor,
        format!(
            "min sigma_(n+1) over {} grid points with |t| <= {FLOOR_HEIGHT}",
            out.away_floor.samples
        ),
    ));
    let mut sampled = Value::Null;
    if samples > 0 {
        let f = sample_sigma_floor(&map, samples, FLOOR_HEIGHT, cfg.seed, true)?;
        report.check(Check::new(
            "sampled_floor",
            f.min_sigma >= floor,
            f.min_sigma,
            floor,
            format!("finite-difference sigma_(n+1) over {samples} uniform samples with |t| <= {FLOOR_HEIGHT}"),
        ));
        sampled = json!({ "samples": f.samples, "min_sigma": f.min_sigma, "at_height": f.at_height });
    }

    report.line(format!(
        "n = {n}, grid {} x {}",
        cfg.grid_density,
        cfg.directions_per_level()
    ));
    for p in &out.critical_points {
        report.line(format!(
            "critical point at height {:+.12}, pole distance {:.3e}, sigma ratio {:.3e}",
            p.height(),
            p.pole_distance(),
            p.ratio
        ));
    }
    report.line(format!(
        "away-from-pole floor {:.4e} at height {:+.4}",
        out.away_floor.min_sigma, out.away_floor.at_height
    ));
    report.data = json!({
        "critical_points": out.critical_points.iter().map(|p| json!({
            "height": p.height(),
            "coords": p.point.coords(),
            "pole_distance": p.pole_distance(),
            "sigma_ratio": p.ratio,
            "log10_sigma": p.log10_sigma,
        })).collect::<Vec<_>>(),
        "candidates": out.candidates.iter().map(|c| json!({
            "level": c.level,
            "start_height": c.start_height,
            "final_height": c.point.height(),
            "sigma_ratio": c.ratio,
            "iterations": c.iterations,
            "status": c.status.as_str(),
            "critical": c.is_critical(),
        })).collect::<Vec<_>>(),
        "grid_floor": {
            "samples": out.away_floor.samples,
            "min_sigma": out.away_floor.min_sigma,
            "at_height": out.away_floor.at_height,
        },
        "sampled_floor": sampled,
    });
    Ok(report)
}

fn fiber(
    n: usize,
    seed: u64,
    samples: usize,
    target: Option<&str>,
    points: usize,
    tol: f64,
) -> Result<Report, UsageError> {
    let mut report = Report::new(
        "fiber",
        json!({ "n": n, "seed": seed, "samples": samples, "target": target, "points": points, "tol": tol }),
    );
    HopfMap::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let targets: Vec<SpherePoint> = match target {
        Some(text) => {
            let coords: Vec<f64> = text
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| UsageError(format!("bad --target: {e}")))?;
            if coords.len() != n + 1 {
                return Err(UsageError(format!(
                    "--target needs {} coordinates, got {}",
                    n + 1,
                    coords.len()
                )));
            }
            vec![SpherePoint::new(coords)?]
        }
        None => (0..samples)
            .map(|_| regular_target(n, &mut rng))
            .collect::<Result<_, _>>()?,
    };
    if targets.is_empty() {
        report
            .warnings
            .push("no targets requested; every check passes vacuously".into());
    }
    let mut residual: f64 = 0.0;
    let mut gap: f64 = 0.0;
    let mut ranks = Vec::new();
    let mut rows = Vec::new();
    for t in &targets {
        let s = fiber_sample(n, t, points, &mut rng)?;
        residual = residual.max(s.max_residual);
        gap = gap.max(s.rank_gap);
        ranks.push(s.linear_rank);
        if target.is_some() {
            let u = AlgebraElement::one(n)?;
            let p = crate::hopfmaps::fiber_parametrize(n, t)?.point(&u)?;
            rows.push(json!({ "target": t.coords(), "point_at_one": p.coords(), "linear_rank": s.linear_rank }));
        }
    }
    let bad = ranks.iter().filter(|&&r| r != n).count();
    report.check(Check::new(
        "residual",
        residual <= tol,
        residual,
        tol,
        "max |h(point) - target|",
    ));
    report.check(Check::new(
        "linear_rank",
        bad == 0 && (points <= n || gap < FIBER_GAP_TOL),
        gap,
        FIBER_GAP_TOL,
        format!("{bad} of {} fibers off rank {n}", targets.len()),
    ));
    report.line(format!("n = {n}, {} targets x {points} points", targets.len()));
    report.data = json!({ "targets": targets.len(), "max_residual": residual, "max_rank_gap": gap, "fibers": rows });
    Ok(report)
}

fn phi(e: i64, c: i64, n: usize, sigma: SigmaArg, assume_embedding: bool) -> Result<Report, UsageError> {
    let sigma = match sigma {
        SigmaArg::Standard => SigmaKind::Standard,
        SigmaArg::Homotopy => SigmaKind::Homotopy,
    };
    let mut report = Report::new(
        "phi",
        json!({ "e": e, "c": c, "n": n, "sigma": sigma, "assume_embedding": assume_embedding }),
    );
    let v = phi_verdict(e, c, n, sigma, assume_embedding)?;
    if let Some(x) = &v.cross_check {
        report.check(Check::new(
            "witness_bounds_meet",
            x.agree,
            json!({ "critical_count": x.critical_count, "lower_bound": x.lower_bound }),
            v.value,
            format!("witness graph on {} vertices", x.witness_vertices),
        ));
    }
    report.line(match v.value {
        Some(value) => format!("phi: {} {value}", v.kind.as_str()),
        None => format!("phi: {}", v.kind.as_str()),
    });
    report.line(v.reason.clone());
    for h in &v.hypotheses {
        report.line(format!("hypothesis: {h}"));
    }
    report.data = serde_json::to_value(&v)?;
    Ok(report)
}

/// Assembles the fiber sum described by a graph document.
pub fn graph_sum(text: &str, source: &str, n: usize) -> Result<Report, UsageError> {
    let mut report = Report::new("graph-sum", json!({ "graph": source, "n": n }));
    let g = FiberSumGraph::from_json(text).map_err(|e| UsageError(format!("{source}: {e}")))?;
    let asm = assemble(&g, n)?;
    let lb = lower_bound(&asm.b_descriptor, n)?;
    report.check(Check::new(
        "count_matches_formula",
        asm.critical_count as i64 == asm.phi_formula_value,
        asm.critical_count,
        asm.phi_formula_value,
        "2m against 2e - 2c + 2",
    ));
    if asm.c == 1 {
        report
            .warnings
            .push("c = 1: the lower bound does not apply; the construction gives an upper bound only".into());
    } else {
        report.check(Check::new(
            "bounds_meet",
            lb.bound == Some(asm.critical_count as i64),
            lb.bound,
            asm.critical_count,
            "lower bound of the source against the construction",
        ));
    }
    report.line(format!("m = {}, e = {}, c = {}", asm.m, asm.e, asm.c));
    report.line(format!("target: {}", asm.a_descriptor));
    report.line(format!("source: {}", asm.b_descriptor));
    report.line(format!("critical points: {}", asm.critical_count));
    if let Some(b) = lb.bound {
        report.line(format!("lower bound: {b}"));
    }
    report.data = json!({ "assembly": asm, "lower_bound": lb });
    Ok(report)
}

fn lower_bound_cmd(manifold: &str, n: usize) -> Result<Report, UsageError> {
    let mut report = Report::new("lower-bound", json!({ "manifold": manifold, "n": n }));
    let m = parse_descriptor(manifold).map_err(|e| UsageError(format!("--manifold {manifold:?}: {e}")))?;
    let lb = lower_bound(&m, n)?;
    report.check(Check::new(
        "hypotheses",
        lb.verdict != BoundVerdict::HypothesisFailed,
        lb.hypothesis_checks.iter().filter(|c| !c.passed).count(),
        0,
        "failed hypothesis checks (c = 1 is reported as not covered)",
    ));
    report.line(format!("manifold: {m}"));
    report.line(format!("beta_{n} = {}, c = {}", lb.beta_n, lb.c));
    report.line(match (lb.verdict, lb.bound) {
        (BoundVerdict::Bound, Some(b)) => format!("lower bound: {b}"),
        (BoundVerdict::NotCovered, _) => "lower bound: not covered (c = 1)".into(),
        _ => "lower bound: hypotheses fail".into(),
    });
    for c in &lb.hypothesis_checks {
        report.line(format!(
            "{} {}: {}",
            if c.passed { "ok  " } else { "FAIL" },
            c.name,
            c.reason
        ));
    }
    report.data = serde_json::to_value(&lb)?;
    Ok(report)
}

fn enumerate(max_edges: usize, n: Option<usize>, list: bool) -> Result<Report, UsageError> {
    let ns: Vec<usize> = n.map_or(vec![2, 4, 8], |n| vec![n]);
    let mut report = Report::new(
        "enumerate-graphs",
        json!({ "max_edges": max_edges, "n": ns, "list": list }),
    );
    let graphs = enumerate_graphs(max_edges)?;
    let mut per_edges = vec![0usize; max_edges + 1];
    let mut verified = 0usize;
    let mut skipped = 0usize;
    let mut failures = Vec::new();
    let mut listing = Vec::new();
    for g in &graphs {
        per_edges[g.edge_count()] += 1;
        for &n in &ns {
            let asm = assemble(g, n)?;
            let formula_ok = asm.critical_count as i64 == asm.phi_formula_value;
            let bound = if asm.c == 1 {
                skipped += 1;
                None
            } else {
                verified += 1;
                lower_bound(&asm.b_descriptor, n)?.bound
            };
            let ok = formula_ok && (asm.c == 1 || bound == Some(asm.critical_count as i64));
            if !ok {
                failures.push(json!({ "graph": g.to_document(), "n": n }));
            }
        }
        if list {
            listing.push(json!({
                "vertices": g.vertex_count(),
                "edges": g.to_document().edges,
                "c": g.cycle_rank(),
            }));
        }
    }
    report.check(Check::new(
        "upper_meets_lower",
        failures.is_empty(),
        failures.len(),
        0,
        format!("{verified} (graph, n) pairs with c != 1 checked, {skipped} with c = 1 checked for the count only"),
    ));
    report.line(format!("{} graphs with at most {max_edges} edges", graphs.len()));
    report.line(format!("per edge count: {per_edges:?}"));
    report.data = json!({
        "graph_count": graphs.len(),
        "per_edge_count": per_edges,
        "verified_pairs": verified,
        "c_equal_one_pairs": skipped,
        "failures": failures,
        "graphs": if list { Value::Array(listing) } else { Value::Null },
    });
    Ok(report)
}

//! Acceptance suite. Prints one `ACnn PASS|FAIL` line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hopf_critical::algebra::{find_nonassociative_triple, AlgebraElement};
use hopf_critical::fibersum::{assemble, enumerate_graphs, phi_verdict, SigmaKind, VerdictKind};
use hopf_critical::homcalc::{
    gysin_unknown_rank, lower_bound, parse_descriptor, puncture_betti, ExactSolution, ManifoldDescriptor,
};
use hopf_critical::hopfmaps::{
    critical_scan, fiber_sample, hopf_jacobian_analytic, sample_sigma_floor, HopfMap, ScanConfig, SuspensionMap,
    EXCLUDED_POLE_MARGIN, SUPPORTED_N,
};
use hopf_critical::numgeo::{random_unit, SpherePoint};

/// Committed regression floor for `σ_{n+1}(J_H)` over `|t| ≤ 0.99`.
const SIGMA_FLOOR: f64 = 5.0e-21;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac01_theorem_identity() -> Outcome {
    let graphs = enumerate_graphs(6).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for g in &graphs {
        let (m, e) = (g.vertex_count() as i64, g.edge_count() as i64);
        let c = e - m + 1;
        for n in SUPPORTED_N {
            let a = assemble(g, n).map_err(|e| e.to_string())?;
            ensure(a.critical_count as i64 == 2 * m, || {
                format!("{:?} n={n}: {} critical points", g.edges(), a.critical_count)
            })?;
            ensure(a.critical_count as i64 == 2 * e - 2 * c + 2, || {
                format!("{:?} n={n}: count off formula", g.edges())
            })?;
            if c == 1 {
                continue;
            }
            let lb = lower_bound(&a.b_descriptor, n).map_err(|e| e.to_string())?;
            ensure(lb.bound == Some(2 * m), || {
                format!("{:?} n={n}: lower bound {:?} vs {}", g.edges(), lb.bound, 2 * m)
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{} graphs, {pairs} (graph, n) pairs with c != 1", graphs.len()))
}

fn ac02_base_case() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in SUPPORTED_N {
        let v = phi_verdict(0, 0, n, SigmaKind::Standard, false).map_err(|e| e.to_string())?;
        ensure(v.kind == VerdictKind::Exact && v.value == Some(2), || {
            format!("n={n}: phi(0,0) = {:?}", v.value)
        })?;
        let map = SuspensionMap::new(n).map_err(|e| e.to_string())?;
        let scan = critical_scan(&map, &ScanConfig::default()).map_err(|e| e.to_string())?;
        ensure(scan.critical_points.len() == 2, || {
            format!("n={n}: {} critical points", scan.critical_points.len())
        })?;
        let dim = 2 * n + 1;
        for (cp, sign) in scan.critical_points.iter().zip([-1.0, 1.0]) {
            let d = cp.point.geodesic_distance(&SpherePoint::pole(dim, sign));
            worst = worst.max(d);
            ensure(d < 1e-6, || format!("n={n}: critical point {d:e} from pole {sign}"))?;
        }
    }
    Ok(format!("2 points per n, max pole distance {worst:.2e}"))
}

fn ac03_no_spurious_criticality() -> Outcome {
    let mut parts = Vec::new();
    for n in SUPPORTED_N {
        let map = SuspensionMap::new(n).map_err(|e| e.to_string())?;
        let f = sample_sigma_floor(&map, 100_000, 0.99, 1, true).map_err(|e| e.to_string())?;
        ensure(f.samples >= 100_000, || format!("n={n}: only {} samples", f.samples))?;
        ensure(f.min_sigma > SIGMA_FLOOR, || {
            format!(
                "n={n}: sigma {:e} at t={} below floor {SIGMA_FLOOR:e}",
                f.min_sigma, f.at_height
            )
        })?;
        parts.push(format!("n={n} min {:.3e}", f.min_sigma));
    }
    Ok(format!("{} (floor {SIGMA_FLOOR:e})", parts.join(", ")))
}

fn ac04_submersion_homothety() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in SUPPORTED_N {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10_000 {
            let p = random_unit(2 * n, &mut rng).map_err(|e| e.to_string())?;
            let j = hopf_jacobian_analytic(n, &p).map_err(|e| e.to_string())?;
            ensure(j.singular_values.len() == n, || {
                format!("n={n}: {} singular values", j.singular_values.len())
            })?;
            for s in &j.singular_values {
                worst = worst.max((s - 2.0).abs());
            }
        }
        // dh(u, v) = (2 v̄, 2 Re u) at (1, 0), for arbitrary ambient (u, v).
        let h = HopfMap::new(n).map_err(|e| e.to_string())?;
        let mut base = vec![0.0; 2 * n];
        base[0] = 1.0;
        let w: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let got = h.differential(&base, &w);
        let mut want: Vec<f64> = w[n..]
            .iter()
            .enumerate()
            .map(|(i, x)| if i == 0 { 2.0 * x } else { -2.0 * x })
            .collect();
        want.push(2.0 * w[0]);
        let dev = got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        ensure(dev < 1e-14, || format!("n={n}: dh at (1,0) off by {dev:e}"))?;
    }
    ensure(worst <= 1e-8, || format!("max |sigma - 2| = {worst:e}"))?;
    Ok(format!("10^4 samples per n, max |sigma - 2| = {worst:.2e}"))
}

fn ac05_fiber_geometry() -> Outcome {
    let (mut res, mut gap): (f64, f64) = (0.0, 0.0);
    for n in SUPPORTED_N {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut done = 0;
        while done < 100 {
            let target = random_unit(n + 1, &mut rng).map_err(|e| e.to_string())?;
            if target.height() <= -1.0 + 1e3 * EXCLUDED_POLE_MARGIN {
                continue;
            }
            let s = fiber_sample(n, &target, 200, &mut rng).map_err(|e| e.to_string())?;
            ensure(s.max_residual < 1e-10, || {
                format!("n={n}: residual {:e}", s.max_residual)
            })?;
            ensure(s.linear_rank == n, || format!("n={n}: linear rank {}", s.linear_rank))?;
            ensure(s.rank_gap < 1e-9, || format!("n={n}: rank gap {:e}", s.rank_gap))?;
            res = res.max(s.max_residual);
            gap = gap.max(s.rank_gap);
            done += 1;
        }
    }
    Ok(format!(
        "100 targets x 200 points per n, max residual {res:.2e}, max gap {gap:.2e}"
    ))
}

fn ac06_gysin() -> Outcome {
    let mut cases = 0;
    for n in SUPPORTED_N {
        for c in 0..=5u64 {
            for b in 1..=10u64 {
                let expected = 2 * c as i64 + b as i64 - 2;
                let got = gysin_unknown_rank(c, b, n).map_err(|e| e.to_string())?;
                match got {
                    ExactSolution::Rank { value } => ensure(value as i64 == expected, || {
                        format!("c={c} b={b} n={n}: rank {value}, want {expected}")
                    })?,
                    ExactSolution::Infeasible(cert) => ensure(expected < 0 && cert.required_rank == expected, || {
                        format!("c={c} b={b} n={n}: unexpected certificate {cert:?}")
                    })?,
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases, infeasible only at c=0, |B|=1"))
}

fn ac07_puncture() -> Outcome {
    for n in SUPPORTED_N {
        let sphere = ManifoldDescriptor::sphere(n + 1).map_err(|e| e.to_string())?;
        let target = ManifoldDescriptor::theorem_target(n, 3).map_err(|e| e.to_string())?;
        ensure(puncture_betti(&sphere, 2).ok() == Some(1), || {
            format!("n={n}: S^{} minus 2 points", n + 1)
        })?;
        for k in 1..=10 {
            let s = puncture_betti(&sphere, k).map_err(|e| e.to_string())?;
            let t = puncture_betti(&target, k).map_err(|e| e.to_string())?;
            ensure(s == k - 1, || format!("n={n} k={k}: sphere gives {s}"))?;
            ensure(t == 3 + k - 1, || format!("n={n} k={k}: #_3 S^1xS^n gives {t}"))?;
        }
    }
    Ok("beta_n(S^{n+1} - 2 pts) = 1, slope 1 over 1..=10 points".into())
}

/// Reference Cayley–Dickson product, written independently of the library.
fn cd_mul(x: &[f64], y: &[f64]) -> Vec<f64> {
    let d = x.len();
    if d == 1 {
        return vec![x[0] * y[0]];
    }
    let h = d / 2;
    let conj = |v: &[f64]| -> Vec<f64> {
        let mut w: Vec<f64> = v.iter().map(|t| -t).collect();
        w[0] = -w[0];
        w
    };
    let (a, b, c, dd) = (&x[..h], &x[h..], &y[..h], &y[h..]);
    let ac = cd_mul(a, c);
    let db = cd_mul(&conj(dd), b);
    let da = cd_mul(dd, a);
    let bc = cd_mul(b, &conj(c));
    let mut out: Vec<f64> = ac.iter().zip(&db).map(|(p, q)| p - q).collect();
    out.extend(da.iter().zip(&bc).map(|(p, q)| p + q));
    out
}

fn ac08_algebra() -> Outcome {
    let mut worst: f64 = 0.0;
    for dim in [1, 2, 4, 8] {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100_000 {
            let xs: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let ys: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let x = AlgebraElement::from_slice(&xs).map_err(|e| e.to_string())?;
            let y = AlgebraElement::from_slice(&ys).map_err(|e| e.to_string())?;
            let xy = x * y;
            let norm = |v: &[f64]| v.iter().map(|t| t * t).sum::<f64>().sqrt();
            let mult = (norm(xy.coords()) - norm(&xs) * norm(&ys)).abs();
            let left = ((x * x) * y).max_abs_diff(&(x * (x * y)));
            let right = ((y * x) * x).max_abs_diff(&(y * (x * x)));
            let reference = cd_mul(&xs, &ys);
            let ref_dev = xy
                .coords()
                .iter()
                .zip(&reference)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            let m = mult.max(left).max(right).max(ref_dev);
            worst = worst.max(m);
            ensure(m <= 1e-12, || format!("dim={dim}: deviation {m:e} at {xs:?}, {ys:?}"))?;
        }
    }
    let (i, j, k) = find_nonassociative_triple(8)
        .map_err(|e| e.to_string())?
        .ok_or("no nonassociative octonion triple found")?;
    let unit = |idx: usize| -> Vec<f64> { (0..8).map(|t| f64::from(u8::from(t == idx))).collect() };
    let lhs = cd_mul(&cd_mul(&unit(i), &unit(j)), &unit(k));
    let rhs = cd_mul(&unit(i), &cd_mul(&unit(j), &unit(k)));
    ensure(lhs != rhs, || format!("reported triple ({i},{j},{k}) is associative"))?;
    let mut count = 0;
    for a in 1..8 {
        for b in 1..8 {
            for c in 1..8 {
                if cd_mul(&cd_mul(&unit(a), &unit(b)), &unit(c)) != cd_mul(&unit(a), &cd_mul(&unit(b), &unit(c))) {
                    count += 1;
                }
            }
        }
    }
    for dim in [1, 2, 4] {
        ensure(find_nonassociative_triple(dim).ok() == Some(None), || {
            format!("dim={dim} reported nonassociative")
        })?;
    }
    Ok(format!(
        "max deviation {worst:.2e}; triple (e{i}, e{j}, e{k}); {count} of 343 imaginary triples nonassociative"
    ))
}

fn expected_verdict(e: i64, c: i64, n: usize, sigma: SigmaKind, assumed: bool) -> (VerdictKind, Option<i64>) {
    match (e, c) {
        (0, 1) if sigma == SigmaKind::Standard => (VerdictKind::FibrationZero, Some(0)),
        (0, 1) => (VerdictKind::Unknown, None),
        (_, 1) => (VerdictKind::UpperOnly, Some(2 * e)),
        _ if e < c => (VerdictKind::Unknown, None),
        _ if n == 2 && sigma == SigmaKind::Homotopy && !assumed => (VerdictKind::Unknown, None),
        _ => (VerdictKind::Exact, Some(2 * e - 2 * c + 2)),
    }
}

fn ac09_verdict_map() -> Outcome {
    let mut cells = 0;
    let mut seen = [0usize; 4];
    for n in SUPPORTED_N {
        for sigma in [SigmaKind::Standard, SigmaKind::Homotopy] {
            for assumed in [false, true] {
                for e in 0..=6i64 {
                    for c in 0..=6i64 {
                        let v = phi_verdict(e, c, n, sigma, assumed).map_err(|e| e.to_string())?;
                        let want = expected_verdict(e, c, n, sigma, assumed);
                        ensure((v.kind, v.value) == want, || {
                            format!(
                                "e={e} c={c} n={n} {sigma:?} assumed={assumed}: {:?} {:?}, want {want:?}",
                                v.kind, v.value
                            )
                        })?;
                        if v.kind == VerdictKind::Exact {
                            let x = v.cross_check.as_ref().ok_or("exact verdict without cross-check")?;
                            ensure(x.agree && x.witness_vertices as i64 == e - c + 1, || {
                                format!("e={e} c={c} n={n}: witness {x:?}")
                            })?;
                        }
                        seen[v.kind as usize] += 1;
                        cells += 1;
                    }
                }
            }
        }
    }
    ensure(seen.iter().all(|&k| k > 0), || {
        format!("not every regime reached: {seen:?}")
    })?;
    ensure(phi_verdict(-1, 0, 2, SigmaKind::Standard, false).is_err(), || {
        "negative e accepted".into()
    })?;
    Ok(format!(
        "{cells} cells (exact, upper_only, unknown, fibration_zero) = {seen:?}"
    ))
}

fn corpus(text: &str) -> impl Iterator<Item = &str> {
    text.lines().filter(|l| !l.starts_with('#'))
}

fn ac10_parser() -> Outcome {
    let good: Vec<&str> = corpus(include_str!("data/descriptors.txt")).collect();
    ensure(good.len() == 50, || format!("corpus has {} expressions", good.len()))?;
    for s in &good {
        let d = parse_descriptor(s).map_err(|e| format!("{s:?}: {e}"))?;
        ensure(d.to_string() == *s, || format!("{s:?} printed as {d}"))?;
    }
    let mut shaped = 0;
    for n in SUPPORTED_N {
        for e in 0..=6 {
            for c in 0..=6 {
                for exotic in [false, true] {
                    let d = ManifoldDescriptor::theorem_source(n, e, c, exotic).map_err(|e| e.to_string())?;
                    let s = d.to_string();
                    ensure(parse_descriptor(&s).as_ref() == Ok(&d), || {
                        format!("{s:?} does not round-trip")
                    })?;
                    shaped += 1;
                }
            }
            let t = ManifoldDescriptor::theorem_target(n, e).map_err(|e| e.to_string())?;
            ensure(parse_descriptor(&t.to_string()).as_ref() == Ok(&t), || {
                format!("{t} does not round-trip")
            })?;
            shaped += 1;
        }
    }
    let mut bad = 0;
    for line in corpus(include_str!("data/malformed.txt")) {
        let (col, s) = line.split_once('\t').ok_or("malformed corpus line")?;
        let col: usize = col.parse().map_err(|_| "bad column in corpus")?;
        match parse_descriptor(s) {
            Ok(d) => return Err(format!("{s:?} parsed as {d}")),
            Err(e) => {
                ensure(e.column == col, || format!("{s:?}: column {}, want {col}", e.column))?;
                ensure(e.to_string().starts_with(&format!("column {col}:")), || {
                    format!("{s:?}: {e}")
                })?;
            }
        }
        bad += 1;
    }
    Ok(format!(
        "{} corpus + {shaped} theorem-shaped round trips, {bad} malformed with positions",
        good.len()
    ))
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "AC01",
            "theorem identity over all graphs with e <= 6",
            ac01_theorem_identity,
        ),
        (
            "AC02",
            "base case phi = 2 and two critical points at the poles",
            ac02_base_case,
        ),
        (
            "AC03",
            "no spurious criticality away from the poles",
            ac03_no_spurious_criticality,
        ),
        (
            "AC04",
            "Hopf map is a submersion with homothety factor 2",
            ac04_submersion_homothety,
        ),
        ("AC05", "fibers are great (n-1)-spheres", ac05_fiber_geometry),
        ("AC06", "Gysin rank 2c + |B| - 2", ac06_gysin),
        ("AC07", "puncture lemma", ac07_puncture),
        ("AC08", "normed division algebras", ac08_algebra),
        ("AC09", "verdict regime map", ac09_verdict_map),
        ("AC10", "descriptor parser", ac10_parser),
    ];
    let mut failed = 0;
    for (id, title, f) in criteria {
        let t0 = Instant::now();
        let outcome = f();
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{id} PASS {title}: {detail} [{secs:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL {title}: {detail} [{secs:.2}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

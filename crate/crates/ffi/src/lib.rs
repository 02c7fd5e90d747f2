//! C ABI over `hopf-critical`.
//!
//! Every fallible function returns an [`HcStatus`]; on failure a message is
//! available from [`hc_last_error_message`] on the same thread. Objects cross
//! the boundary as opaque handles that the caller releases with the matching
//! `*_free` function. Strings returned by the library are released with
//! [`hc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hopf_critical::algebra::AlgebraElement;
use hopf_critical::fibersum::{self, FiberSumGraph, SigmaKind, VerdictKind};
use hopf_critical::homcalc::{self, BoundVerdict, ExactSolution, ManifoldDescriptor};
use hopf_critical::hopfmaps::{self, ScanConfig, SuspensionMap};
use hopf_critical::numgeo::SpherePoint;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnsupportedDimension = 3,
    DomainError = 4,
    ParseError = 5,
    GraphError = 6,
    Infeasible = 7,
    BufferTooSmall = 8,
    OutOfRange = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcBoundVerdict {
    Bound = 0,
    NotCovered = 1,
    HypothesisFailed = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcVerdictKind {
    Exact = 0,
    UpperOnly = 1,
    Unknown = 2,
    FibrationZero = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HcLowerBound {
    pub verdict: HcBoundVerdict,
    /// Valid only when `verdict` is `HC_BOUND_VERDICT_BOUND`.
    pub bound: i64,
    pub beta_n: usize,
    pub c: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HcAssembly {
    pub m: usize,
    pub e: usize,
    pub c: usize,
    pub critical_count: usize,
    pub phi_formula_value: i64,
    pub has_lower_bound: bool,
    pub lower_bound: i64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HcVerdict {
    pub kind: HcVerdictKind,
    pub has_value: bool,
    pub value: i64,
    /// 1 if the witness-graph bounds agree, 0 if not, −1 if no cross-check ran.
    pub cross_check: i32,
}

/// A parsed connected-sum expression.
pub struct HcDescriptor {
    inner: ManifoldDescriptor,
}

/// A connected multigraph.
pub struct HcGraph {
    inner: FiberSumGraph,
}

/// Critical points found by a scan.
pub struct HcScan {
    points: Vec<(SpherePoint, f64)>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(HcStatus, String);

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard<F>(f: F) -> HcStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HcStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HcStatus::Internal
        }
    }
}

fn fail<T>(status: HcStatus, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, msg.into()))
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), Failure> {
    if p.is_null() {
        fail(HcStatus::NullPointer, format!("{name} is null"))
    } else {
        Ok(())
    }
}

fn hopf_failure(e: hopfmaps::HopfError) -> Failure {
    let status = match e {
        hopfmaps::HopfError::UnsupportedN(_) => HcStatus::UnsupportedDimension,
        hopfmaps::HopfError::InvalidConfig(_) | hopfmaps::HopfError::DomainDimension { .. } => {
            HcStatus::InvalidArgument
        }
        _ => HcStatus::DomainError,
    };
    Failure(status, e.to_string())
}

fn fiber_failure(e: fibersum::FiberError) -> Failure {
    let status = match e {
        fibersum::FiberError::UnsupportedN(_) => HcStatus::UnsupportedDimension,
        fibersum::FiberError::NegativeInput { .. } => HcStatus::InvalidArgument,
        _ => HcStatus::GraphError,
    };
    Failure(status, e.to_string())
}

fn hom_failure(e: homcalc::HomError) -> Failure {
    Failure(HcStatus::InvalidArgument, e.to_string())
}

unsafe fn c_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    non_null(p, name)?;
    CStr::from_ptr(p)
        .to_str()
        .or_else(|_| fail(HcStatus::InvalidArgument, format!("{name} is not UTF-8")))
}

/// The message of the last failure on this thread, or null if none.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn hc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `out = x · y` in the Cayley–Dickson algebra of dimension `dim` (1, 2, 4 or 8).
///
/// # Safety
/// `x`, `y` and `out` must each point to `dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn hc_algebra_mul(dim: usize, x: *const f64, y: *const f64, out: *mut f64) -> HcStatus {
    guard(|| {
        non_null(x, "x")?;
        non_null(y, "y")?;
        non_null(out, "out")?;
        if !matches!(dim, 1 | 2 | 4 | 8) {
            return fail(
                HcStatus::UnsupportedDimension,
                format!("unsupported algebra dimension {dim}"),
            );
        }
        let a = AlgebraElement::from_slice(std::slice::from_raw_parts(x, dim))
            .or_else(|e| fail(HcStatus::InvalidArgument, e.to_string()))?;
        let b = AlgebraElement::from_slice(std::slice::from_raw_parts(y, dim))
            .or_else(|e| fail(HcStatus::InvalidArgument, e.to_string()))?;
        let p = a * b;
        std::slice::from_raw_parts_mut(out, dim).copy_from_slice(p.coords());
        Ok(())
    })
}

/// `ψ(r) = exp(1 − 1/r²)` on `[0, 1]`.
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn hc_psi(r: f64, out: *mut f64) -> HcStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = hopfmaps::psi(r).map_err(hopf_failure)?;
        Ok(())
    })
}

/// The Hopf map `S^{2n−1} → S^n`; `p` has `2n` entries, `out` receives `n + 1`.
///
/// # Safety
/// `p` must point to `p_len` doubles and `out` to `out_len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn hc_hopf_eval(
    n: usize,
    p: *const f64,
    p_len: usize,
    out: *mut f64,
    out_len: usize,
) -> HcStatus {
    guard(|| {
        non_null(p, "p")?;
        non_null(out, "out")?;
        if out_len < n + 1 {
            return fail(HcStatus::BufferTooSmall, format!("out needs {} entries", n + 1));
        }
        let point = SpherePoint::new(std::slice::from_raw_parts(p, p_len).to_vec())
            .or_else(|e| fail(HcStatus::DomainError, e.to_string()))?;
        let q = hopfmaps::hopf_eval(n, &point).map_err(hopf_failure)?;
        std::slice::from_raw_parts_mut(out, n + 1).copy_from_slice(q.coords());
        Ok(())
    })
}

/// The suspension `H(x, t)`; `x` has `2n` entries, `out` receives `n + 2`.
///
/// # Safety
/// `x` must point to `x_len` doubles and `out` to `out_len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn hc_suspension_eval(
    n: usize,
    x: *const f64,
    x_len: usize,
    t: f64,
    out: *mut f64,
    out_len: usize,
) -> HcStatus {
    guard(|| {
        non_null(x, "x")?;
        non_null(out, "out")?;
        if out_len < n + 2 {
            return fail(HcStatus::BufferTooSmall, format!("out needs {} entries", n + 2));
        }
        let q = hopfmaps::suspension_eval(n, std::slice::from_raw_parts(x, x_len), t).map_err(hopf_failure)?;
        std::slice::from_raw_parts_mut(out, n + 2).copy_from_slice(q.coords());
        Ok(())
    })
}

/// Parses a connected-sum expression such as `"Sigma8 # 2*S4xS4 # 2*S1xS7"`.
///
/// On a parse error `*error_column` (if non-null) receives the 1-based column.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_descriptor_parse(
    text: *const c_char,
    out: *mut *mut HcDescriptor,
    error_column: *mut usize,
) -> HcStatus {
    guard(|| {
        non_null(out, "out")?;
        let text = c_str(text, "text")?;
        match homcalc::parse_descriptor(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(HcDescriptor { inner }));
                Ok(())
            }
            Err(e) => {
                if !error_column.is_null() {
                    *error_column = e.column;
                }
                fail(HcStatus::ParseError, e.to_string())
            }
        }
    })
}

/// # Safety
/// `d` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn hc_descriptor_free(d: *mut HcDescriptor) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Manifold dimension, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live descriptor handle.
#[no_mangle]
pub unsafe extern "C" fn hc_descriptor_dim(d: *const HcDescriptor) -> usize {
    d.as_ref().map_or(0, |d| d.inner.dim())
}

/// Rank of the free fundamental group, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live descriptor handle.
#[no_mangle]
pub unsafe extern "C" fn hc_descriptor_pi1_rank(d: *const HcDescriptor) -> usize {
    d.as_ref().map_or(0, |d| d.inner.pi1_rank())
}

/// Writes `β_0 … β_dim` into `out`, which must hold `dim + 1` entries.
///
/// # Safety
/// `d` must be a live descriptor handle and `out` must point to `out_len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn hc_descriptor_betti(d: *const HcDescriptor, out: *mut usize, out_len: usize) -> HcStatus {
    guard(|| {
        non_null(d, "descriptor")?;
        non_null(out, "out")?;
        let b = (*d).inner.betti();
        if out_len < b.len() {
            return fail(HcStatus::BufferTooSmall, format!("out needs {} entries", b.len()));
        }
        std::slice::from_raw_parts_mut(out, b.len()).copy_from_slice(&b);
        Ok(())
    })
}

/// Normal form of the descriptor; release with [`hc_string_free`]. Null for a null handle.
///
/// # Safety
/// `d` must be null or a live descriptor handle.
#[no_mangle]
pub unsafe extern "C" fn hc_descriptor_to_string(d: *const HcDescriptor) -> *mut c_char {
    match d.as_ref() {
        Some(d) => CString::new(d.inner.to_string()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// Evaluates `β_n(M) − 2c + 2` and its hypotheses for `M` of dimension `2n`.
///
/// # Safety
/// `d` must be a live descriptor handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_lower_bound(d: *const HcDescriptor, n: usize, out: *mut HcLowerBound) -> HcStatus {
    guard(|| {
        non_null(d, "descriptor")?;
        non_null(out, "out")?;
        let r = homcalc::lower_bound(&(*d).inner, n).map_err(hom_failure)?;
        *out = HcLowerBound {
            verdict: match r.verdict {
                BoundVerdict::Bound => HcBoundVerdict::Bound,
                BoundVerdict::NotCovered => HcBoundVerdict::NotCovered,
                BoundVerdict::HypothesisFailed => HcBoundVerdict::HypothesisFailed,
            },
            bound: r.bound.unwrap_or(0),
            beta_n: r.beta_n,
            c: r.c,
        };
        Ok(())
    })
}

/// `rank H_n(M ∖ V) = 2c + |B| − 2` from the Gysin segment.
///
/// Returns `HC_STATUS_INFEASIBLE` with the (negative) required rank in `*out`
/// when exactness has no nonnegative solution.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_gysin_unknown_rank(c: u64, b: u64, n: usize, out: *mut i64) -> HcStatus {
    guard(|| {
        non_null(out, "out")?;
        match homcalc::gysin_unknown_rank(c, b, n).map_err(hom_failure)? {
            ExactSolution::Rank { value } => {
                *out = value as i64;
                Ok(())
            }
            ExactSolution::Infeasible(cert) => {
                *out = cert.required_rank;
                fail(
                    HcStatus::Infeasible,
                    format!("exactness requires rank {}", cert.required_rank),
                )
            }
        }
    })
}

/// Builds a graph from `edge_count` pairs stored flat in `edges`.
///
/// # Safety
/// `edges` must point to `2 * edge_count` entries (may be null when `edge_count` is 0); `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_new(
    vertices: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut HcGraph,
) -> HcStatus {
    guard(|| {
        non_null(out, "out")?;
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else {
            non_null(edges, "edges")?;
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let pairs = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let inner = FiberSumGraph::new(vertices, pairs).map_err(fiber_failure)?;
        *out = Box::into_raw(Box::new(HcGraph { inner }));
        Ok(())
    })
}

/// Parses `{"vertices": m, "edges": [[u, v], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_from_json(json: *const c_char, out: *mut *mut HcGraph) -> HcStatus {
    guard(|| {
        non_null(out, "out")?;
        let inner = FiberSumGraph::from_json(c_str(json, "json")?).map_err(fiber_failure)?;
        *out = Box::into_raw(Box::new(HcGraph { inner }));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_free(g: *mut HcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count `m`, edge count `e` and cycle rank `c`; null outputs are skipped.
///
/// # Safety
/// `g` must be a live graph handle; each output must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_counts(g: *const HcGraph, m: *mut usize, e: *mut usize, c: *mut usize) -> HcStatus {
    guard(|| {
        non_null(g, "graph")?;
        let g = &(*g).inner;
        for (p, v) in [(m, g.vertex_count()), (e, g.edge_count()), (c, g.cycle_rank())] {
            if !p.is_null() {
                *p = v;
            }
        }
        Ok(())
    })
}

/// Assembles the fiber sum along `g` and evaluates the lower bound of its source.
///
/// # Safety
/// `g` must be a live graph handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_assemble(g: *const HcGraph, n: usize, out: *mut HcAssembly) -> HcStatus {
    guard(|| {
        non_null(g, "graph")?;
        non_null(out, "out")?;
        let a = fibersum::assemble(&(*g).inner, n).map_err(fiber_failure)?;
        let lb = homcalc::lower_bound(&a.b_descriptor, n).map_err(hom_failure)?.bound;
        *out = HcAssembly {
            m: a.m,
            e: a.e,
            c: a.c,
            critical_count: a.critical_count,
            phi_formula_value: a.phi_formula_value,
            has_lower_bound: lb.is_some(),
            lower_bound: lb.unwrap_or(0),
        };
        Ok(())
    })
}

/// The source manifold of the fiber sum along `g` as a new descriptor handle.
///
/// # Safety
/// `g` must be a live graph handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_graph_source_descriptor(
    g: *const HcGraph,
    n: usize,
    out: *mut *mut HcDescriptor,
) -> HcStatus {
    guard(|| {
        non_null(g, "graph")?;
        non_null(out, "out")?;
        let a = fibersum::assemble(&(*g).inner, n).map_err(fiber_failure)?;
        *out = Box::into_raw(Box::new(HcDescriptor { inner: a.b_descriptor }));
        Ok(())
    })
}

/// The value of `φ(Σ^{2n} #_e S^n×S^n #_c S^1×S^{2n−1}, #_c S^1×S^n)` where known.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_phi_verdict(
    e: i64,
    c: i64,
    n: usize,
    sigma_homotopy: bool,
    embedding_assumed: bool,
    out: *mut HcVerdict,
) -> HcStatus {
    guard(|| {
        non_null(out, "out")?;
        let sigma = if sigma_homotopy {
            SigmaKind::Homotopy
        } else {
            SigmaKind::Standard
        };
        let v = fibersum::phi_verdict(e, c, n, sigma, embedding_assumed).map_err(fiber_failure)?;
        *out = HcVerdict {
            kind: match v.kind {
                VerdictKind::Exact => HcVerdictKind::Exact,
                VerdictKind::UpperOnly => HcVerdictKind::UpperOnly,
                VerdictKind::Unknown => HcVerdictKind::Unknown,
                VerdictKind::FibrationZero => HcVerdictKind::FibrationZero,
            },
            has_value: v.value.is_some(),
            value: v.value.unwrap_or(0),
            cross_check: v.cross_check.map_or(-1, |x| i32::from(x.agree)),
        };
        Ok(())
    })
}

/// Scans the suspension for critical points; `grid` height levels, `8 * grid` directions each.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_critical_scan(
    n: usize,
    grid: usize,
    seed: u64,
    refine_tol: f64,
    out: *mut *mut HcScan,
) -> HcStatus {
    guard(|| {
        non_null(out, "out")?;
        let map = SuspensionMap::new(n).map_err(hopf_failure)?;
        let cfg = ScanConfig {
            grid_density: grid,
            seed,
            refine_tol,
            ..ScanConfig::default()
        };
        let scan = hopfmaps::critical_scan(&map, &cfg).map_err(hopf_failure)?;
        let points = scan.critical_points.into_iter().map(|p| (p.point, p.ratio)).collect();
        *out = Box::into_raw(Box::new(HcScan { points }));
        Ok(())
    })
}

/// Number of critical points, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live scan handle.
#[no_mangle]
pub unsafe extern "C" fn hc_scan_len(s: *const HcScan) -> usize {
    s.as_ref().map_or(0, |s| s.points.len())
}

/// Coordinates (`2n + 1` entries) and `σ_{n+1}/σ_1` of critical point `index`.
///
/// # Safety
/// `s` must be a live scan handle; `coords` must point to `coords_len` writable
/// doubles; `ratio` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn hc_scan_point(
    s: *const HcScan,
    index: usize,
    coords: *mut f64,
    coords_len: usize,
    ratio: *mut f64,
) -> HcStatus {
    guard(|| {
        non_null(s, "scan")?;
        non_null(coords, "coords")?;
        let scan = &*s;
        let Some((p, r)) = scan.points.get(index) else {
            return fail(HcStatus::OutOfRange, format!("index {index} out of range"));
        };
        let c = p.coords();
        if coords_len < c.len() {
            return fail(HcStatus::BufferTooSmall, format!("coords needs {} entries", c.len()));
        }
        std::slice::from_raw_parts_mut(coords, c.len()).copy_from_slice(c);
        if !ratio.is_null() {
            *ratio = *r;
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn hc_scan_free(s: *mut HcScan) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

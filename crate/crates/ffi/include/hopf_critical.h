#ifndef HOPF_CRITICAL_H
#define HOPF_CRITICAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HcStatus {
  HC_STATUS_OK = 0,
  HC_STATUS_NULL_POINTER = 1,
  HC_STATUS_INVALID_ARGUMENT = 2,
  HC_STATUS_UNSUPPORTED_DIMENSION = 3,
  HC_STATUS_DOMAIN_ERROR = 4,
  HC_STATUS_PARSE_ERROR = 5,
  HC_STATUS_GRAPH_ERROR = 6,
  HC_STATUS_INFEASIBLE = 7,
  HC_STATUS_BUFFER_TOO_SMALL = 8,
  HC_STATUS_OUT_OF_RANGE = 9,
  HC_STATUS_INTERNAL = 10,
} HcStatus;

typedef enum HcBoundVerdict {
  HC_BOUND_VERDICT_BOUND = 0,
  HC_BOUND_VERDICT_NOT_COVERED = 1,
  HC_BOUND_VERDICT_HYPOTHESIS_FAILED = 2,
} HcBoundVerdict;

typedef enum HcVerdictKind {
  HC_VERDICT_KIND_EXACT = 0,
  HC_VERDICT_KIND_UPPER_ONLY = 1,
  HC_VERDICT_KIND_UNKNOWN = 2,
  HC_VERDICT_KIND_FIBRATION_ZERO = 3,
} HcVerdictKind;

// A parsed connected-sum expression.
typedef struct HcDescriptor HcDescriptor;

// A connected multigraph.
typedef struct HcGraph HcGraph;

// Critical points found by a scan.
typedef struct HcScan HcScan;

typedef struct HcLowerBound {
  enum HcBoundVerdict verdict;
  // Valid only when `verdict` is `HC_BOUND_VERDICT_BOUND`.
  int64_t bound;
  size_t beta_n;
  size_t c;
} HcLowerBound;

typedef struct HcAssembly {
  size_t m;
  size_t e;
  size_t c;
  size_t critical_count;
  int64_t phi_formula_value;
  bool has_lower_bound;
  int64_t lower_bound;
} HcAssembly;

typedef struct HcVerdict {
  enum HcVerdictKind kind;
  bool has_value;
  int64_t value;
  // 1 if the witness-graph bounds agree, 0 if not, −1 if no cross-check ran.
  int32_t cross_check;
} HcVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failure on this thread, or null if none.
//
// The pointer stays valid until the next failing call on the same thread.
const char *hc_last_error_message(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a pointer obtained from this library that has not been freed.
void hc_string_free(char *s);

// `out = x · y` in the Cayley–Dickson algebra of dimension `dim` (1, 2, 4 or 8).
//
// # Safety
// `x`, `y` and `out` must each point to `dim` doubles.
enum HcStatus hc_algebra_mul(size_t dim, const double *x, const double *y, double *out);

// `ψ(r) = exp(1 − 1/r²)` on `[0, 1]`.
//
// # Safety
// `out` must point to a writable double.
enum HcStatus hc_psi(double r, double *out);

// The Hopf map `S^{2n−1} → S^n`; `p` has `2n` entries, `out` receives `n + 1`.
//
// # Safety
// `p` must point to `p_len` doubles and `out` to `out_len` writable doubles.
enum HcStatus hc_hopf_eval(size_t n, const double *p, size_t p_len, double *out, size_t out_len);

// The suspension `H(x, t)`; `x` has `2n` entries, `out` receives `n + 2`.
//
// # Safety
// `x` must point to `x_len` doubles and `out` to `out_len` writable doubles.
enum HcStatus hc_suspension_eval(size_t n,
                                 const double *x,
                                 size_t x_len,
                                 double t,
                                 double *out,
                                 size_t out_len);

// Parses a connected-sum expression such as `"Sigma8 # 2*S4xS4 # 2*S1xS7"`.
//
// On a parse error `*error_column` (if non-null) receives the 1-based column.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum HcStatus hc_descriptor_parse(const char *text,
                                  struct HcDescriptor **out,
                                  size_t *error_column);

// # Safety
// `d` must be null or a handle from this library that has not been freed.
void hc_descriptor_free(struct HcDescriptor *d);

// Manifold dimension, or 0 for a null handle.
//
// # Safety
// `d` must be null or a live descriptor handle.
size_t hc_descriptor_dim(const struct HcDescriptor *d);

// Rank of the free fundamental group, or 0 for a null handle.
//
// # Safety
// `d` must be null or a live descriptor handle.
size_t hc_descriptor_pi1_rank(const struct HcDescriptor *d);

// Writes `β_0 … β_dim` into `out`, which must hold `dim + 1` entries.
//
// # Safety
// `d` must be a live descriptor handle and `out` must point to `out_len` writable entries.
enum HcStatus hc_descriptor_betti(const struct HcDescriptor *d, size_t *out, size_t out_len);

// Normal form of the descriptor; release with [`hc_string_free`]. Null for a null handle.
//
// # Safety
// `d` must be null or a live descriptor handle.
char *hc_descriptor_to_string(const struct HcDescriptor *d);

// Evaluates `β_n(M) − 2c + 2` and its hypotheses for `M` of dimension `2n`.
//
// # Safety
// `d` must be a live descriptor handle and `out` writable.
enum HcStatus hc_lower_bound(const struct HcDescriptor *d, size_t n, struct HcLowerBound *out);

// `rank H_n(M ∖ V) = 2c + |B| − 2` from the Gysin segment.
//
// Returns `HC_STATUS_INFEASIBLE` with the (negative) required rank in `*out`
// when exactness has no nonnegative solution.
//
// # Safety
// `out` must be writable.
enum HcStatus hc_gysin_unknown_rank(uint64_t c, uint64_t b, size_t n, int64_t *out);

// Builds a graph from `edge_count` pairs stored flat in `edges`.
//
// # Safety
// `edges` must point to `2 * edge_count` entries (may be null when `edge_count` is 0); `out` writable.
enum HcStatus hc_graph_new(size_t vertices,
                           const size_t *edges,
                           size_t edge_count,
                           struct HcGraph **out);

// Parses `{"vertices": m, "edges": [[u, v], ...]}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` writable.
enum HcStatus hc_graph_from_json(const char *json, struct HcGraph **out);

// # Safety
// `g` must be null or a handle from this library that has not been freed.
void hc_graph_free(struct HcGraph *g);

// Vertex count `m`, edge count `e` and cycle rank `c`; null outputs are skipped.
//
// # Safety
// `g` must be a live graph handle; each output must be null or writable.
enum HcStatus hc_graph_counts(const struct HcGraph *g, size_t *m, size_t *e, size_t *c);

// Assembles the fiber sum along `g` and evaluates the lower bound of its source.
//
// # Safety
// `g` must be a live graph handle; `out` writable.
enum HcStatus hc_graph_assemble(const struct HcGraph *g, size_t n, struct HcAssembly *out);

// The source manifold of the fiber sum along `g` as a new descriptor handle.
//
// # Safety
// `g` must be a live graph handle; `out` writable.
enum HcStatus hc_graph_source_descriptor(const struct HcGraph *g,
                                         size_t n,
                                         struct HcDescriptor **out);

// The value of `φ(Σ^{2n} #_e S^n×S^n #_c S^1×S^{2n−1}, #_c S^1×S^n)` where known.
//
// # Safety
// `out` must be writable.
enum HcStatus hc_phi_verdict(int64_t e,
                             int64_t c,
                             size_t n,
                             bool sigma_homotopy,
                             bool embedding_assumed,
                             struct HcVerdict *out);

// Scans the suspension for critical points; `grid` height levels, `8 * grid` directions each.
//
// # Safety
// `out` must be writable.
enum HcStatus hc_critical_scan(size_t n,
                               size_t grid,
                               uint64_t seed,
                               double refine_tol,
                               struct HcScan **out);

// Number of critical points, or 0 for a null handle.
//
// # Safety
// `s` must be null or a live scan handle.
size_t hc_scan_len(const struct HcScan *s);

// Coordinates (`2n + 1` entries) and `σ_{n+1}/σ_1` of critical point `index`.
//
// # Safety
// `s` must be a live scan handle; `coords` must point to `coords_len` writable
// doubles; `ratio` must be null or writable.
enum HcStatus hc_scan_point(const struct HcScan *s,
                            size_t index,
                            double *coords,
                            size_t coords_len,
                            double *ratio);

// # Safety
// `s` must be null or a handle from this library that has not been freed.
void hc_scan_free(struct HcScan *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOPF_CRITICAL_H */

#ifndef ECCN_H
#define ECCN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes of every `eccn_*` function.
typedef enum EccnStatus {
  ECCN_STATUS_OK = 0,
  ECCN_STATUS_NULL_POINTER = 1,
  ECCN_STATUS_INVALID_ARGUMENT = 2,
  ECCN_STATUS_PARSE = 3,
  ECCN_STATUS_DIMENSION = 4,
  ECCN_STATUS_IO = 5,
  ECCN_STATUS_CHECKPOINT = 6,
  ECCN_STATUS_BUDGET_EXHAUSTED = 7,
  ECCN_STATUS_INTERNAL = 8,
} EccnStatus;

// An undirected graph on at most 64 vertices.
typedef struct EccnGraph EccnGraph;

// A trained network loaded from a checkpoint.
typedef struct EccnModel EccnModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copy the calling thread's last error message into `buf` (NUL
// terminated, truncated to `len`). Returns the full message length in
// bytes, excluding the terminator.
//
// # Safety
// `buf` must be null or valid for `len` bytes.
size_t eccn_last_error_message(char *buf, size_t len);

// Erdős–Rényi graph `G(n, p)` drawn from `seed`.
//
// # Safety
// `out` must be valid for writes.
enum EccnStatus eccn_graph_er_generate(size_t n, double p, uint64_t seed, struct EccnGraph **out);

// Parse a `<n>\t<upper-triangle bits>` record.
//
// # Safety
// `record` must be a NUL-terminated string and `out` valid for writes.
enum EccnStatus eccn_graph_from_record(const char *record, struct EccnGraph **out);

// Graph on `n` vertices from `edge_count` pairs stored flat in `endpoints`
// (`2 · edge_count` entries).
//
// # Safety
// `endpoints` must hold `2 · edge_count` values (it may be null when
// `edge_count` is 0) and `out` must be valid for writes.
enum EccnStatus eccn_graph_from_edges(size_t n,
                                      const uint32_t *endpoints,
                                      size_t edge_count,
                                      struct EccnGraph **out);

// # Safety
// `g` must come from an `eccn_graph_*` constructor and not be used again.
void eccn_graph_free(struct EccnGraph *g);

// # Safety
// `g` must be a live graph handle and `out` valid for writes.
enum EccnStatus eccn_graph_vertex_count(const struct EccnGraph *g, size_t *out);

// # Safety
// `g` must be a live graph handle and `out` valid for writes.
enum EccnStatus eccn_graph_edge_count(const struct EccnGraph *g, size_t *out);

// Exact edge clique cover number. A negative `budget` means unlimited;
// otherwise the search gives up after `budget` clique selections and
// returns `ECCN_STATUS_BUDGET_EXHAUSTED`.
//
// # Safety
// `g` must be a live graph handle and `out` valid for writes.
enum EccnStatus eccn_exact(const struct EccnGraph *g, int64_t budget, size_t *out);

// Size of the Kellerman heuristic cover.
//
// # Safety
// `g` must be a live graph handle and `out` valid for writes.
enum EccnStatus eccn_kellerman(const struct EccnGraph *g, size_t *out);

// # Safety
// `g` must be a live graph handle and `out` valid for writes.
enum EccnStatus eccn_maximal_clique_count(const struct EccnGraph *g, size_t *out);

// Sample-complexity bound for one recurrent layer of width `a` on inputs
// of length at most `b`.
//
// # Safety
// `out` must be valid for writes.
enum EccnStatus eccn_sample_complexity_single(size_t a,
                                              size_t b,
                                              double eps,
                                              double delta,
                                              double *out);

// Sample-complexity bound of the size-adaptive network with `d` layers on
// graphs with at most `n` vertices.
//
// # Safety
// `out` must be valid for writes.
enum EccnStatus eccn_sample_complexity_graph(size_t n,
                                             size_t d,
                                             double eps,
                                             double delta,
                                             double *out);

// The graph bound divided by the number of graphs with at most `n`
// vertices.
//
// # Safety
// `out` must be valid for writes.
enum EccnStatus eccn_breakeven_ratio(size_t n, size_t d, double eps, double delta, double *out);

// # Safety
// `path` must be a NUL-terminated string and `out` valid for writes.
enum EccnStatus eccn_model_load(const char *path, struct EccnModel **out);

// Largest graph the model accepts.
//
// # Safety
// `m` must be a live model handle and `out` valid for writes.
enum EccnStatus eccn_model_n_max(const struct EccnModel *m, size_t *out);

// Model output on `g`, in normalised label space.
//
// # Safety
// `m` and `g` must be live handles and `out` valid for writes.
enum EccnStatus eccn_model_predict(const struct EccnModel *m,
                                   const struct EccnGraph *g,
                                   double *out);

// # Safety
// `m` must come from [`eccn_model_load`] and not be used again.
void eccn_model_free(struct EccnModel *m);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ECCN_H */

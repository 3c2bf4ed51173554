#ifndef COARSE_FOREST_H
#define COARSE_FOREST_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CfStatus {
  CF_STATUS_OK = 0,
  CF_STATUS_NULL_POINTER = 1,
  CF_STATUS_INVALID_METRIC = 2,
  CF_STATUS_INVALID_PARAMETER = 3,
  CF_STATUS_DISCONNECTED = 4,
  CF_STATUS_NON_UNIT_EDGES = 5,
  CF_STATUS_NOT_A_TREE = 6,
  CF_STATUS_BUDGET_EXCEEDED = 7,
  CF_STATUS_PARSE = 8,
  CF_STATUS_FAILED = 9,
  CF_STATUS_PANIC = 10,
} CfStatus;

/*
 Graph, possibly leveled.
 */
typedef struct CfGraph CfGraph;

/*
 Finite metric space.
 */
typedef struct CfMetric CfMetric;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or null. Valid until
 the next call into this library on the same thread.
 */
const char *cf_last_error(void);

/*
 # Safety
 `s` must come from this library, or be null.
 */
void cf_string_free(char *s);

/*
 Validates an `n x n` row-major distance matrix.

 # Safety
 `data` must point to `n * n` doubles; `out` must be writable.
 */
enum CfStatus cf_metric_from_matrix(const double *data, size_t n, struct CfMetric **out);

/*
 # Safety
 `m` must come from this library, or be null.
 */
void cf_metric_free(struct CfMetric *m);

/*
 # Safety
 `m` must be a live handle.
 */
size_t cf_metric_len(const struct CfMetric *m);

/*
 Distance between points `i` and `j`, or NaN when out of range.

 # Safety
 `m` must be a live handle.
 */
double cf_metric_distance(const struct CfMetric *m, size_t i, size_t j);

/*
 # Safety
 `m` must be a live handle; `out` writable.
 */
enum CfStatus cf_metric_is_ultrametric(const struct CfMetric *m, bool *out);

/*
 Largest ultrametric below `m`.

 # Safety
 `m` must be a live handle; `out` writable.
 */
enum CfStatus cf_metric_subdominant(const struct CfMetric *m, struct CfMetric **out);

/*
 Rips-graph hyperbolic approximation over levels `k_min..=k_max`.

 # Safety
 `m` must be a live handle; `out` writable.
 */
enum CfStatus cf_build_rh(const struct CfMetric *m,
                          double r,
                          int32_t k_min,
                          int32_t k_max,
                          struct CfGraph **out);

/*
 Ball-cover hyperbolic approximation over levels `k_min..=k_max`.

 # Safety
 `m` must be a live handle; `out` writable.
 */
enum CfStatus cf_build_h(const struct CfMetric *m,
                         double r,
                         int32_t k_min,
                         int32_t k_max,
                         struct CfGraph **out);

/*
 Parses graph JSON.

 # Safety
 `json` must be a nul-terminated string; `out` writable.
 */
enum CfStatus cf_graph_from_json(const char *json, struct CfGraph **out);

/*
 # Safety
 `g` must be a live handle; `out` writable.
 */
enum CfStatus cf_graph_to_json(const struct CfGraph *g, char **out);

/*
 # Safety
 `g` must come from this library, or be null.
 */
void cf_graph_free(struct CfGraph *g);

/*
 # Safety
 `g` must be a live handle.
 */
size_t cf_graph_vertex_count(const struct CfGraph *g);

/*
 # Safety
 `g` must be a live handle.
 */
size_t cf_graph_edge_count(const struct CfGraph *g);

/*
 # Safety
 `g` must be a live handle.
 */
bool cf_graph_is_tree(const struct CfGraph *g);

/*
 Four-point hyperbolicity constant; exhaustive when `n^4 <= budget`.

 # Safety
 `g` must be a live handle; `out` writable.
 */
enum CfStatus cf_four_point_delta(const struct CfGraph *g, size_t budget, double *out);

/*
 Bottleneck constant of a unit-length graph.

 # Safety
 `g` must be a live handle; `out` writable.
 */
enum CfStatus cf_bottleneck_delta(const struct CfGraph *g, size_t budget, double *out);

/*
 Level-connectivity report as JSON.

 # Safety
 `m` must be a live handle; `out` writable.
 */
enum CfStatus cf_pq_detector(const struct CfMetric *m, double r, size_t bound, char **out);

/*
 Quotient tree of `g` along `f` (one value per vertex). Writes the tree
 and, when `report` is non-null, a JSON summary with the fitted
 constants.

 # Safety
 `g` must be a live handle; `f` must point to `n` doubles; `tree`
 writable; `report` writable or null.
 */
enum CfStatus cf_treeify(const struct CfGraph *g,
                         const double *f,
                         size_t n,
                         struct CfGraph **tree,
                         char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COARSE_FOREST_H */

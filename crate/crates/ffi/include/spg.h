#ifndef SPG_H
#define SPG_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

// Property selector for [`spg_graph_check`].
enum SpgProperty
#ifdef __cplusplus
  : uint32_t
#endif // __cplusplus
 {
  SPG_PROPERTY_VALIDITY = 0,
  SPG_PROPERTY_PARTITION = 1,
  SPG_PROPERTY_CONNECTIVITY = 2,
  SPG_PROPERTY_ADJACENCY = 3,
  SPG_PROPERTY_STRONG_ADJACENCY = 4,
  SPG_PROPERTY_END_POINT_COUNT = 5,
  SPG_PROPERTY_SINGLETON = 6,
  SPG_PROPERTY_DIMENSION_REDUCTION = 7,
};
#ifndef __cplusplus
typedef uint32_t SpgProperty;
#endif // __cplusplus

typedef enum SpgStatus {
  SPG_STATUS_OK = 0,
  SPG_STATUS_NULL_POINTER = 1,
  SPG_STATUS_INVALID_UTF8 = 2,
  SPG_STATUS_PARSE_ERROR = 3,
  SPG_STATUS_INVALID_ARGUMENT = 4,
  SPG_STATUS_INVALID_GRAPH = 5,
  SPG_STATUS_BUDGET_EXCEEDED = 6,
  SPG_STATUS_BUDGET_EXHAUSTED = 7,
  SPG_STATUS_VERIFICATION_FAILED = 8,
  SPG_STATUS_UNREACHABLE = 9,
  SPG_STATUS_PANIC = 10,
} SpgStatus;

// Strategy selector for [`spg_transform`].
enum SpgStrategy
#ifdef __cplusplus
  : uint32_t
#endif // __cplusplus
 {
  SPG_STRATEGY_RESAMPLE = 0,
  SPG_STRATEGY_REJECT = 1,
};
#ifndef __cplusplus
typedef uint32_t SpgStrategy;
#endif // __cplusplus

// An SPG together with its document form (annotations included).
typedef struct SpgGraph SpgGraph;

// The outcome of a successful transform.
typedef struct SpgTransform SpgTransform;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or NULL. The pointer stays
// valid until the next failing call on the same thread.
const char *spg_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library.
void spg_string_free(char *s);

// Parses a JSON document.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SpgStatus spg_graph_parse(const char *json, struct SpgGraph **out);

// Serializes to the canonical JSON layout.
//
// # Safety
// `graph` must be a live handle; `out` must be writable.
enum SpgStatus spg_graph_to_json(const struct SpgGraph *graph, char **out);

// # Safety
// `graph` must be NULL or a handle not yet freed.
void spg_graph_free(struct SpgGraph *graph);

// The spindle template on `[d] x {1,2}`.
//
// # Safety
// `out` must be writable.
enum SpgStatus spg_spindle_template(size_t d, struct SpgGraph **out);

// # Safety
// `graph` must be NULL or a live handle. Returns 0 for NULL.
size_t spg_graph_vertex_count(const struct SpgGraph *graph);

// # Safety
// `graph` must be NULL or a live handle. Returns 0 for NULL.
size_t spg_graph_edge_count(const struct SpgGraph *graph);

// # Safety
// `graph` must be NULL or a live handle. Returns 0 for NULL.
size_t spg_graph_dimension(const struct SpgGraph *graph);

// # Safety
// `graph` must be NULL or a live handle. Returns 0 for NULL.
size_t spg_graph_symbol_count(const struct SpgGraph *graph);

// # Safety
// `graph` must be NULL or a live handle. Returns 0 for NULL.
size_t spg_graph_max_degree(const struct SpgGraph *graph);

// Shortest-path distance between two vertices.
//
// # Safety
// `graph` must be a live handle; `out` must be writable.
enum SpgStatus spg_graph_distance(const struct SpgGraph *graph,
                                  size_t from,
                                  size_t to,
                                  size_t *out);

// Distance between the annotated apices.
//
// # Safety
// `graph` must be a live handle; `out` must be writable.
enum SpgStatus spg_graph_spindle_length(const struct SpgGraph *graph, size_t *out);

// Checks one property. `*holds` is set to 1 or 0 and, when non-NULL,
// `*witnesses` to the number of violations found. `budget` applies to
// dimension reduction only; 0 selects the default.
//
// # Safety
// `graph` must be a live handle; `holds` must be writable; `witnesses`
// must be NULL or writable.
enum SpgStatus spg_graph_check(const struct SpgGraph *graph,
                               uint32_t property,
                               uint64_t budget,
                               uint8_t *holds,
                               size_t *witnesses);

// Smallest multiplier `r` for which the construction is guaranteed at
// maximum degree `delta`.
size_t spg_min_multiplier(size_t delta);

// Runs the strong-adjacency transform on a singleton graph.
//
// # Safety
// `graph` must be a live handle; `out` must be writable.
enum SpgStatus spg_transform(const struct SpgGraph *graph,
                             size_t r,
                             uint64_t seed,
                             size_t max_rounds,
                             uint32_t strategy,
                             struct SpgTransform **out);

// Transforms the spindle template of dimension `d`; the result keeps the
// lifted apices.
//
// # Safety
// `out` must be writable.
enum SpgStatus spg_exponential_spindle(size_t d,
                                       size_t r,
                                       uint64_t seed,
                                       size_t max_rounds,
                                       uint32_t strategy,
                                       struct SpgTransform **out);

// A new graph handle holding the transformed graph and its annotations.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum SpgStatus spg_transform_graph(const struct SpgTransform *t, struct SpgGraph **out);

// # Safety
// `t` must be NULL or a live handle. Returns 0 for NULL.
size_t spg_transform_rounds_used(const struct SpgTransform *t);

// # Safety
// `t` must be NULL or a live handle. Returns 0 for NULL.
size_t spg_transform_multiplier(const struct SpgTransform *t);

// # Safety
// `t` must be NULL or a handle not yet freed.
void spg_transform_free(struct SpgTransform *t);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPG_H */

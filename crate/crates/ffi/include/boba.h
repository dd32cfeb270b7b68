/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef BOBA_H
#define BOBA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BobaStatus {
  BOBA_STATUS_OK = 0,
  BOBA_STATUS_NULL_POINTER = 1,
  BOBA_STATUS_INVALID_ARGUMENT = 2,
  BOBA_STATUS_IO = 3,
  BOBA_STATUS_PARSE = 4,
  BOBA_STATUS_INVALID_STATE = 5,
  BOBA_STATUS_OUT_OF_BOUNDS = 6,
  BOBA_STATUS_BUFFER_TOO_SMALL = 7,
  BOBA_STATUS_INTERNAL = 8,
} BobaStatus;

typedef enum BobaAlgorithm {
  BOBA_ALGORITHM_ORACLE = 0,
  BOBA_ALGORITHM_BOA = 1,
  BOBA_ALGORITHM_BOA_ENH = 2,
  BOBA_ALGORITHM_BOBA = 3,
} BobaAlgorithm;

typedef enum BobaOrder {
  /**
   * Distance first, time as tie-breaker.
   */
  BOBA_ORDER_FIRST_SECOND = 0,
  BOBA_ORDER_SECOND_FIRST = 1,
} BobaOrder;

typedef enum BobaDirection {
  BOBA_DIRECTION_FORWARD = 0,
  BOBA_DIRECTION_BACKWARD = 1,
} BobaDirection;

typedef enum BobaQueue {
  BOBA_QUEUE_BUCKET = 0,
  BOBA_QUEUE_HEAP = 1,
} BobaQueue;

typedef enum BobaBacktrack {
  BOBA_BACKTRACK_COMPACT = 0,
  BOBA_BACKTRACK_CONVENTIONAL = 1,
} BobaBacktrack;

/**
 * Opaque result handle: the Pareto front of one query and its metrics.
 */
typedef struct BobaFront BobaFront;

/**
 * Opaque graph handle.
 */
typedef struct BobaGraph BobaGraph;

/**
 * One arc of a graph built in memory.
 */
typedef struct BobaArc {
  uint32_t from;
  uint32_t to;
  uint64_t c1;
  uint64_t c2;
} BobaArc;

typedef struct BobaConfig {
  enum BobaAlgorithm algorithm;
  /**
   * Uni-directional engines only.
   */
  enum BobaOrder order;
  /**
   * Uni-directional engines only.
   */
  enum BobaDirection direction;
  enum BobaQueue queue;
  /**
   * 1 or 2.
   */
  uint32_t threads;
  /**
   * Mutual heuristic tuning of the bi-directional engine.
   */
  bool tuning;
  enum BobaBacktrack backtrack;
  /**
   * Reconstruct solution paths.
   */
  bool paths;
} BobaConfig;

typedef struct BobaMetrics {
  double wall_ms;
  double heuristics_ms;
  uint64_t solutions;
  uint64_t generated;
  uint64_t expanded;
  uint64_t pruned;
  uint64_t peak_open;
  uint64_t peak_live;
  uint64_t pathstore_entries;
  uint64_t pool_reuse;
  uint64_t memory_bytes;
} BobaMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the calling thread's last error; empty if none. Valid until
 * the next failing call on the same thread.
 */
const char *boba_last_error(void);

/**
 * Static name of a status code.
 */
const char *boba_status_str(enum BobaStatus status);

/**
 * Builds a graph of `num_states` states from `num_arcs` arcs (0-based ids).
 *
 * # Safety
 * `arcs` must point to `num_arcs` readable elements (or be null when
 * `num_arcs` is 0); `out` must be writable.
 */
enum BobaStatus boba_graph_from_arcs(size_t num_states,
                                     const struct BobaArc *arcs,
                                     size_t num_arcs,
                                     struct BobaGraph **out);

/**
 * Loads a graph from a DIMACS distance file and a time file with the same
 * arc sequence.
 *
 * # Safety
 * `gr1` and `gr2` must be NUL-terminated paths; `out` must be writable.
 */
enum BobaStatus boba_graph_from_dimacs(const char *gr1, const char *gr2, struct BobaGraph **out);

/**
 * Number of states; 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t boba_graph_num_states(const struct BobaGraph *graph);

/**
 * Number of arcs after self-loop removal; 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t boba_graph_num_arcs(const struct BobaGraph *graph);

/**
 * # Safety
 * `graph` must be null or a handle not yet freed.
 */
void boba_graph_free(struct BobaGraph *graph);

/**
 * BOBA* on one thread with tuning, bucket queue and compact backtracking.
 */
struct BobaConfig boba_config_default(void);

/**
 * Computes the Pareto front of `start -> goal` (0-based ids). A null
 * `config` means [`boba_config_default`]. An unreachable goal yields an
 * empty front.
 *
 * # Safety
 * `graph` must be a live handle, `config` null or readable, `out` writable.
 */
enum BobaStatus boba_solve(const struct BobaGraph *graph,
                           uint32_t start,
                           uint32_t goal,
                           const struct BobaConfig *config,
                           struct BobaFront **out);

/**
 * Number of solutions; 0 for a null handle.
 *
 * # Safety
 * `front` must be null or a live handle.
 */
size_t boba_front_len(const struct BobaFront *front);

/**
 * Cost pair of solution `index` (solutions are sorted by increasing `c1`).
 *
 * # Safety
 * `front` must be a live handle; `c1` and `c2` writable.
 */
enum BobaStatus boba_front_cost(const struct BobaFront *front,
                                size_t index,
                                uint64_t *c1,
                                uint64_t *c2);

/**
 * Number of states on the path of solution `index`; 0 when paths were not
 * requested.
 *
 * # Safety
 * `front` must be a live handle; `len` writable.
 */
enum BobaStatus boba_front_path_len(const struct BobaFront *front, size_t index, size_t *len);

/**
 * Copies the 0-based state sequence of solution `index` into `buffer`.
 *
 * # Safety
 * `front` must be a live handle and `buffer` writable for `capacity`
 * elements.
 */
enum BobaStatus boba_front_path_copy(const struct BobaFront *front,
                                     size_t index,
                                     uint32_t *buffer,
                                     size_t capacity);

/**
 * Run metrics of the query that produced `front`.
 *
 * # Safety
 * `front` must be a live handle; `out` writable.
 */
enum BobaStatus boba_front_metrics(const struct BobaFront *front, struct BobaMetrics *out);

/**
 * # Safety
 * `front` must be null or a handle not yet freed.
 */
void boba_front_free(struct BobaFront *front);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOBA_H */

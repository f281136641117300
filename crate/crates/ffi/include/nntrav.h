#ifndef NNTRAV_H
#define NNTRAV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NntravStatus {
  NNTRAV_STATUS_OK = 0,
  NNTRAV_STATUS_NULL_POINTER = 1,
  NNTRAV_STATUS_INVALID_ARGUMENT = 2,
  NNTRAV_STATUS_INVALID_NODE = 3,
  NNTRAV_STATUS_MISSING_EDGE = 4,
  NNTRAV_STATUS_DUPLICATE_EDGE = 5,
  NNTRAV_STATUS_UNREACHABLE = 6,
  NNTRAV_STATUS_TOO_LARGE = 7,
  NNTRAV_STATUS_BUFFER_TOO_SMALL = 8,
  NNTRAV_STATUS_PRECONDITION = 9,
  NNTRAV_STATUS_BUDGET_EXHAUSTED = 10,
  NNTRAV_STATUS_PANIC = 99,
} NntravStatus;

/**
 * Tie policy for [`nntrav_nn_traversal`].
 */
typedef enum NntravTies {
  NNTRAV_TIES_LOWEST_ID = 0,
  NNTRAV_TIES_SEEDED_RANDOM = 1,
} NntravTies;

typedef enum NntravAgent {
  NNTRAV_AGENT_NN = 0,
  NNTRAV_AGENT_DFS_RESTART = 1,
} NntravAgent;

typedef enum NntravAdversary {
  NNTRAV_ADVERSARY_NONE = 0,
  NNTRAV_ADVERSARY_CLIQUE = 1,
  NNTRAV_ADVERSARY_KILLER = 2,
} NntravAdversary;

/**
 * Opaque graph handle.
 */
typedef struct NntravGraph NntravGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *nntrav_last_error(void);

/**
 * Builds a graph on `n` nodes from `edge_count` pairs stored flat in
 * `edges` (`u0, v0, u1, v1, ...`).
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values (or be null when
 * `edge_count` is 0) and `out` must be writable.
 */
enum NntravStatus nntrav_graph_new(size_t n,
                                   const size_t *edges,
                                   size_t edge_count,
                                   struct NntravGraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum NntravStatus nntrav_graph_complete(size_t n, struct NntravGraph **out);

/**
 * Layered ring with ring size `nu` and `k` layers.
 *
 * # Safety
 * `out` must be writable.
 */
enum NntravStatus nntrav_graph_layered_ring(size_t nu, size_t k, struct NntravGraph **out);

/**
 * Two cliques of `n/3` nodes joined by a path of `n/3` nodes.
 *
 * # Safety
 * `out` must be writable.
 */
enum NntravStatus nntrav_graph_dfs_killer(size_t n, struct NntravGraph **out);

/**
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void nntrav_graph_free(struct NntravGraph *g);

/**
 * Node count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t nntrav_graph_node_count(const struct NntravGraph *g);

/**
 * Edge count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t nntrav_graph_edge_count(const struct NntravGraph *g);

/**
 * # Safety
 * `g` must be a live handle with no concurrent users.
 */
enum NntravStatus nntrav_graph_delete_edge(struct NntravGraph *g, size_t u, size_t v);

/**
 * Hop distances from `source` into `out[0..len]`; unreachable nodes get
 * `n + 1`. `len` must be at least the node count.
 *
 * # Safety
 * `g` must be a live handle and `out` must have room for `len` values.
 */
enum NntravStatus nntrav_graph_bfs(const struct NntravGraph *g,
                                   size_t source,
                                   uint64_t *out,
                                   size_t len);

/**
 * Greedy traversal of the hop metric from `start`. Writes the visiting
 * order to `order[0..len]` and its cost to `cost`.
 *
 * # Safety
 * `g` must be a live handle, `order` must have room for `len` values and
 * `cost` must be writable.
 */
enum NntravStatus nntrav_nn_traversal(const struct NntravGraph *g,
                                      size_t start,
                                      enum NntravTies ties,
                                      uint64_t seed,
                                      size_t *order,
                                      size_t len,
                                      uint64_t *cost);

/**
 * Exact cheapest traversal cost of the hop metric; only for small graphs.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum NntravStatus nntrav_opt_cost(const struct NntravGraph *g, uint64_t *out);

/**
 * Runs the label-propagating walker. `schedule` holds `count` triples
 * `(iteration, u, v)`; iteration 0 deletes before the first round. A
 * `budget` of 0 selects the default. On return `iterations` holds the
 * rounds run; an exhausted budget yields `BUDGET_EXHAUSTED`.
 *
 * # Safety
 * `g` must be a live handle, `schedule` must hold `3 * count` values (or
 * be null when `count` is 0) and `iterations` must be writable.
 */
enum NntravStatus nntrav_simulate(const struct NntravGraph *g,
                                  size_t start,
                                  const size_t *schedule,
                                  size_t count,
                                  size_t budget,
                                  size_t *iterations);

/**
 * Plays an agent against an adversary on the adversary's graph: `K_n`
 * for `NONE` and `CLIQUE`, the two-clique graph for `KILLER`. Writes the
 * number of moves to `steps`.
 *
 * # Safety
 * `steps` must be writable.
 */
enum NntravStatus nntrav_duel(enum NntravAgent agent,
                              enum NntravAdversary adversary,
                              size_t n,
                              size_t *steps);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NNTRAV_H */

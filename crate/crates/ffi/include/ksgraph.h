#ifndef KSGRAPH_H
#define KSGRAPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Stable across releases.
 */
typedef enum KsgStatus {
  KSG_STATUS_OK = 0,
  KSG_STATUS_NULL_POINTER = 1,
  KSG_STATUS_INVALID_ARGUMENT = 2,
  KSG_STATUS_NOT_FOUND = 3,
  KSG_STATUS_PARSE_ERROR = 4,
  KSG_STATUS_RESOURCE_LIMIT = 5,
  KSG_STATUS_VALIDATION_FAILED = 6,
  KSG_STATUS_NON_CONVERGENCE = 7,
  KSG_STATUS_IO_ERROR = 8,
  KSG_STATUS_PANIC = 9,
} KsgStatus;

/**
 * Opaque graph handle.
 */
typedef struct KsgGraph KsgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *ksg_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ksg_version(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void ksg_string_free(char *s);

/**
 * Looks up a catalog graph such as `G_YO`, `J_GYO_GYO`, `K4` or `C5`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum KsgStatus ksg_graph_from_catalog(const char *name, struct KsgGraph **out);

/**
 * Parses a graph in the `p ograph` text format.
 *
 * # Safety
 * `source` must be a NUL-terminated string; `out` must be writable.
 */
enum KsgStatus ksg_graph_from_ograph(const char *source, struct KsgGraph **out);

/**
 * Builds a graph on `n` vertices from `m` edges given as `2m` 0-based
 * endpoints.
 *
 * # Safety
 * `edges` must point to `2 * m` readable values (may be NULL when `m` is 0).
 */
enum KsgStatus ksg_graph_from_edges(size_t n, const size_t *edges, size_t m, struct KsgGraph **out);

/**
 * Releases a graph handle. NULL is ignored.
 *
 * # Safety
 * `g` must come from this library and not have been freed already.
 */
void ksg_graph_free(struct KsgGraph *g);

/**
 * Vertex count, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t ksg_graph_vertex_count(const struct KsgGraph *g);

/**
 * Edge count, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t ksg_graph_edge_count(const struct KsgGraph *g);

/**
 * Exact clique number.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum KsgStatus ksg_clique_number(const struct KsgGraph *g, uint64_t *out);

/**
 * Exact chromatic number.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum KsgStatus ksg_chromatic_number(const struct KsgGraph *g, uint64_t *out);

/**
 * Exact fractional chromatic number as a `"p/q"` string.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable. Free the string with
 * [`ksg_string_free`].
 */
enum KsgStatus ksg_fractional_chromatic_number(const struct KsgGraph *g, char **out);

/**
 * State-independent contextuality test for rank-`rank` projectors in
 * dimension `dim`. Writes 1 or 0 to `is_sic` and, when `certificate` is
 * not NULL, the certificate JSON.
 *
 * # Safety
 * `g` must be a live handle; `is_sic` must be writable; `certificate` may
 * be NULL.
 */
enum KsgStatus ksg_sic_test(const struct KsgGraph *g,
                            uint64_t dim,
                            uint64_t rank,
                            int *is_sic,
                            char **certificate);

/**
 * Re-checks a certificate. Writes 1 or 0 to `valid`; when invalid and
 * `failure` is not NULL, writes the first violated condition.
 *
 * # Safety
 * `g` must be a live handle; `json` NUL-terminated; `valid` writable;
 * `failure` may be NULL.
 */
enum KsgStatus ksg_verify_certificate(const struct KsgGraph *g,
                                      const char *json,
                                      int *valid,
                                      char **failure);

/**
 * Contextuality measure for fixed projectors. `state_json` NULL means the
 * maximally mixed state. `tol <= 0` selects the default tolerance. Writes
 * the value in nats and, when `result_json` is not NULL, the full result.
 *
 * # Safety
 * `g` must be a live handle; string arguments NUL-terminated;
 * `value_nats` writable; `result_json` may be NULL.
 */
enum KsgStatus ksg_measure(const struct KsgGraph *g,
                           const char *projectors_json,
                           const char *state_json,
                           double tol,
                           double *value_nats,
                           char **result_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KSGRAPH_H */

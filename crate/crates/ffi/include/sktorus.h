#ifndef SKTORUS_H
#define SKTORUS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum SktStatus {
  SKT_STATUS_OK = 0,
  SKT_STATUS_NULL_POINTER = 1,
  SKT_STATUS_INVALID_UTF8 = 2,
  SKT_STATUS_INVALID_INPUT = 3,
  SKT_STATUS_UNKNOWN_NAME = 4,
  SKT_STATUS_DIMENSION = 5,
  SKT_STATUS_NOT_INVERTIBLE = 6,
  SKT_STATUS_BUDGET_EXCEEDED = 7,
  SKT_STATUS_JSON = 8,
  SKT_STATUS_PANIC = 9,
} SktStatus;

/**
 * Cyclotomic context `Z[t]/Phi_m`.
 */
typedef struct SktContext SktContext;

/**
 * Torus element with Laurent coefficients in `t = q^(1/2)`.
 */
typedef struct SktElement SktElement;

/**
 * Quasitriangulation handle.
 */
typedef struct SktQuasitri SktQuasitri;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. Valid until the next call on this thread.
 */
const char *skt_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *skt_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a string produced by this library and not yet freed.
 */
void skt_string_free(char *s);

/**
 * Parses a quasitriangulation from JSON.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SktStatus skt_quasitri_from_json(const char *json, struct SktQuasitri **out);

/**
 * Loads a bundled fixture by name (`annulus`, `square`, `eye`, `pentagon`).
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum SktStatus skt_quasitri_fixture(const char *name, struct SktQuasitri **out);

/**
 * # Safety
 * `q` must be NULL or a live handle.
 */
void skt_quasitri_free(struct SktQuasitri *q);

/**
 * Vertex matrix as JSON `{"index": [...], "rows": [[...]]}`; free with [`skt_string_free`].
 *
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum SktStatus skt_quasitri_vertex_matrix_json(const struct SktQuasitri *q, char **out);

/**
 * Serializes the quasitriangulation; free with [`skt_string_free`].
 *
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum SktStatus skt_quasitri_to_json(const struct SktQuasitri *q, char **out);

/**
 * Flips `edge`, producing a new handle.
 *
 * # Safety
 * `q` must be a live handle, `edge` a NUL-terminated string, `out` writable.
 */
enum SktStatus skt_quasitri_flip(const struct SktQuasitri *q,
                                 const char *edge,
                                 struct SktQuasitri **out);

/**
 * Cyclotomic context for a primitive `m`-th root `t`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SktStatus skt_context_new(uint64_t m, struct SktContext **out);

/**
 * `N = ord(xi^4)` with `xi = t^2`.
 *
 * # Safety
 * `ctx` must be a live handle; `out` must be writable.
 */
enum SktStatus skt_context_big_n(const struct SktContext *ctx, uint64_t *out);

/**
 * # Safety
 * `ctx` must be NULL or a live handle.
 */
void skt_context_free(struct SktContext *ctx);

/**
 * Closed form of `T_n(K + K^-1 + E)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SktStatus skt_element_demoivre(uint32_t n, struct SktElement **out);

/**
 * Direct evaluation of `T_n(K + K^-1 + E)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SktStatus skt_element_chebyshev_ke(uint32_t n, struct SktElement **out);

/**
 * Product `a * b`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum SktStatus skt_element_mul(const struct SktElement *a,
                               const struct SktElement *b,
                               struct SktElement **out);

/**
 * Sum `a + b`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum SktStatus skt_element_add(const struct SktElement *a,
                               const struct SktElement *b,
                               struct SktElement **out);

/**
 * Exact equality, after specializing to `ctx` when it is non-NULL.
 *
 * # Safety
 * `a`, `b` must be live handles, `ctx` NULL or live, `out` writable.
 */
enum SktStatus skt_element_equal(const struct SktElement *a,
                                 const struct SktElement *b,
                                 const struct SktContext *ctx,
                                 bool *out);

/**
 * Canonical JSON, specialized to `ctx` when it is non-NULL; free with [`skt_string_free`].
 *
 * # Safety
 * `e` must be a live handle, `ctx` NULL or live, `out` writable.
 */
enum SktStatus skt_element_to_json(const struct SktElement *e,
                                   const struct SktContext *ctx,
                                   char **out);

/**
 * # Safety
 * `e` must be NULL or a live handle.
 */
void skt_element_free(struct SktElement *e);

/**
 * Whether `(X+Y)^N = X^N + Y^N` in the `XY = xi^4 YX` torus; symbolic when `ctx` is NULL.
 *
 * # Safety
 * `ctx` must be NULL or live; `out` writable.
 */
enum SktStatus skt_gauss_criterion(uint32_t n, const struct SktContext *ctx, bool *out);

/**
 * Runs every built-in verification; writes the number of failures. A zero budget skips enumerations.
 *
 * # Safety
 * `failures` must be writable.
 */
enum SktStatus skt_verify_run_all(uint64_t budget,
                                  uint32_t *failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKTORUS_H */

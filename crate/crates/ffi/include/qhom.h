#ifndef QHOM_H
#define QHOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QhomStatus {
  QHOM_STATUS_OK = 0,
  QHOM_STATUS_NULL_POINTER = 1,
  QHOM_STATUS_INVALID_UTF8 = 2,
  QHOM_STATUS_INVALID_INPUT = 3,
  QHOM_STATUS_PARSE = 4,
  QHOM_STATUS_RING_MISMATCH = 5,
  QHOM_STATUS_NOT_HOMOGENEOUS = 6,
  QHOM_STATUS_INVALID_COMPLEX = 7,
  QHOM_STATUS_NOT_ARTINIAN = 8,
  QHOM_STATUS_NOT_COHEN_MACAULAY = 9,
  QHOM_STATUS_TRUNCATION_INSUFFICIENT = 10,
  QHOM_STATUS_UNVERIFIED = 11,
  QHOM_STATUS_PRECONDITION = 12,
  /**
   * A script ran but some statements failed; the output is still filled in.
   */
  QHOM_STATUS_RUNTIME = 13,
  QHOM_STATUS_INTERNAL = 14,
} QhomStatus;

/**
 * A finitely generated graded module.
 */
typedef struct QhomModule QhomModule;

/**
 * A graded quotient of a polynomial ring.
 */
typedef struct QhomRing QhomRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. Valid until the next call.
 */
const char *qhom_last_error(void);

/**
 * Library version as a static string.
 */
const char *qhom_version(void);

void qhom_string_free(char *s);

/**
 * `k[vars] / (ideal)` with `k` the rationals when `characteristic` is 0 and `GF(p)` otherwise.
 * `vars` and `ideal` are comma-separated; `ideal` may be empty.
 */
enum QhomStatus qhom_ring_new(uint32_t characteristic,
                              const char *vars,
                              const char *ideal,
                              struct QhomRing **out);

void qhom_ring_free(struct QhomRing *r);

enum QhomStatus qhom_ring_describe(const struct QhomRing *r, char **out);

enum QhomStatus qhom_ring_dim(const struct QhomRing *r, int32_t *out);

enum QhomStatus qhom_ring_depth(const struct QhomRing *r, uint32_t *out);

enum QhomStatus qhom_ring_is_cm(const struct QhomRing *r, bool *out);

enum QhomStatus qhom_ring_is_gorenstein(const struct QhomRing *r, bool *out);

/**
 * The residue field `k = R/m`.
 */
enum QhomStatus qhom_module_residue_field(const struct QhomRing *r, struct QhomModule **out);

/**
 * `R/I` for a comma-separated list of generators of `I`.
 */
enum QhomStatus qhom_module_cyclic(const struct QhomRing *r,
                                   const char *ideal,
                                   struct QhomModule **out);

/**
 * `⊕ R(-t_i)`; `twists` may be NULL when `n` is 0.
 */
enum QhomStatus qhom_module_free_module(const struct QhomRing *r,
                                        const int32_t *twists,
                                        size_t n,
                                        struct QhomModule **out);

void qhom_module_free(struct QhomModule *m);

enum QhomStatus qhom_module_depth(const struct QhomModule *m, uint32_t *out);

/**
 * Writes `dim_k M_d` for `d = lo..=hi` into `dims`, which must hold `hi - lo + 1` entries.
 */
enum QhomStatus qhom_module_hilbert(const struct QhomModule *m,
                                    int32_t lo,
                                    int32_t hi,
                                    int64_t *dims);

/**
 * Certified quasi-projective dimension as JSON (value, route, certificate, trail).
 */
enum QhomStatus qhom_qpd_json(const struct QhomModule *m, uint64_t seed, char **out);

/**
 * Certified quasi-injective dimension as JSON (value, route, certificate or obstruction, trail).
 */
enum QhomStatus qhom_qid_json(const struct QhomModule *m, uint64_t seed, char **out);

/**
 * Runs a script and writes the session JSON. Returns `QHOM_STATUS_RUNTIME` with the JSON still
 * written when some statements failed.
 */
enum QhomStatus qhom_run_script(const char *script, uint64_t seed, char **out);

/**
 * Runs the theorem harness on the shipped corpus and writes the report JSON.
 */
enum QhomStatus qhom_verify_corpus(uint64_t seed, char **out, size_t *violations);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QHOM_H */

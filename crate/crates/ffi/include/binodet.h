#ifndef BINODET_H
#define BINODET_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BinodetStatus {
  BINODET_STATUS_OK = 0,
  BINODET_STATUS_NULL_POINTER = 1,
  BINODET_STATUS_INVALID_INPUT = 2,
  BINODET_STATUS_INVARIANT = 3,
  BINODET_STATUS_OUT_OF_RANGE = 4,
  BINODET_STATUS_PANIC = 5,
} BinodetStatus;

/**
 * Opaque handle to a computed coefficient.
 */
typedef struct BinodetReport BinodetReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Owned by the
 * library; valid until the next failing call on the same thread.
 */
const char *binodet_last_error(void);

/**
 * Computes `c(lambda, mu)` from arrays of parts.
 *
 * # Safety
 * `lambda` and `mu` must point to `lambda_len` and `mu_len` readable
 * values; `out` must be writable.
 */
enum BinodetStatus binodet_compute(const uint32_t *lambda,
                                   size_t lambda_len,
                                   const uint32_t *mu,
                                   size_t mu_len,
                                   struct BinodetReport **out);

/**
 * Computes `c(lambda, mu)` from comma-separated text such as `"3,3,3"`.
 *
 * # Safety
 * `lambda` and `mu` must be NUL-terminated strings; `out` must be writable.
 */
enum BinodetStatus binodet_compute_str(const char *lambda,
                                       const char *mu,
                                       struct BinodetReport **out);

/**
 * # Safety
 * `report` must be NULL or a handle from this library not yet freed.
 */
void binodet_report_free(struct BinodetReport *report);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library not yet freed.
 */
void binodet_string_free(char *s);

/**
 * `c(lambda, mu)` as a decimal string.
 *
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
enum BinodetStatus binodet_report_total(const struct BinodetReport *report, char **out);

/**
 * Number of triangular sequences in the report.
 *
 * # Safety
 * `report` must be NULL or a live handle.
 */
size_t binodet_report_term_count(const struct BinodetReport *report);

/**
 * Entries of term `index`: writes up to `cap` values to `entries`, the
 * sequence length to `len`, and the determinant as a decimal string to `det`.
 *
 * # Safety
 * `report` must be a live handle; `entries` must have room for `cap`
 * values (or be NULL when `cap` is 0); `len` and `det` must be writable.
 */
enum BinodetStatus binodet_report_term(const struct BinodetReport *report,
                                       size_t index,
                                       int64_t *entries,
                                       size_t cap,
                                       size_t *len,
                                       char **det);

/**
 * `c(lambda, mu; f)` as a decimal string (`p = 3`).
 *
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
enum BinodetStatus binodet_report_partial(const struct BinodetReport *report,
                                          int64_t f,
                                          char **out);

/**
 * The report as JSON; `f < 0` means all terms.
 *
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
enum BinodetStatus binodet_report_json(const struct BinodetReport *report, int64_t f, char **out);

/**
 * Signed count of vertex-disjoint path tuples from `starts` to `ends`,
 * each given as `p` interleaved `x, y` pairs.
 *
 * # Safety
 * `starts` and `ends` must point to `2 * p` readable values; `out` must be
 * writable.
 */
enum BinodetStatus binodet_signed_count(const int64_t *starts,
                                        const int64_t *ends,
                                        size_t p,
                                        char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BINODET_H */

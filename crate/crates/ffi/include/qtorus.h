#ifndef QTORUS_H
#define QTORUS_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared with the CLI exit contract.
 */
typedef enum {
  QT_STATUS_OK = 0,
  QT_STATUS_CHECK_FAILED = 1,
  QT_STATUS_INVALID_INPUT = 2,
  QT_STATUS_INFEASIBLE = 3,
  QT_STATUS_INTERNAL_ERROR = 4,
} QtStatus;

/**
 * Algebra flavor selector for dimension reports.
 */
typedef enum {
  QT_FLAVOR_REGULAR = 0,
  QT_FLAVOR_HOLOMORPHIC = 1,
  QT_FLAVOR_SMOOTH = 2,
} QtFlavor;

/**
 * Opaque handle around a validated context file.
 */
typedef struct QtContext QtContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *qt_version(void);

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread; do not free.
 */
const char *qt_last_error_message(void);

/**
 * Parse and validate a context file. Returns NULL on invalid input, with
 * the diagnostic available through [`qt_last_error_message`].
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `status` may be NULL.
 */
QtContext *qt_context_parse(const char *text, QtStatus *status);

/**
 * Release a context handle. NULL is allowed.
 *
 * # Safety
 * `ctx` must have come from [`qt_context_parse`] and not yet be freed.
 */
void qt_context_free(QtContext *ctx);

/**
 * Release a string returned by this library. NULL is allowed.
 *
 * # Safety
 * `s` must have come from a qtorus FFI call and not yet be freed.
 */
void qt_string_free(char *s);

/**
 * JSON dimension report for one flavor.
 *
 * # Safety
 * `ctx` must be a live handle from [`qt_context_parse`]; `status` may be NULL.
 */
char *qt_report_json(const QtContext *ctx, QtFlavor flavor, int64_t bound, QtStatus *status);

/**
 * JSON Hochschild table. `cohomology = false` selects homology.
 *
 * # Safety
 * `ctx` must be a live handle; `twist` a valid NUL-terminated string.
 */
char *qt_hh_json(const QtContext *ctx,
                 const char *twist,
                 bool cohomology,
                 int64_t box_radius,
                 QtStatus *status);

/**
 * JSON verification document; `status` distinguishes pass, check failure,
 * invalid input and infeasible requests.
 *
 * # Safety
 * `ctx` must be a live handle; `check` and `twist` valid NUL-terminated strings.
 */
char *qt_verify_json(const QtContext *ctx,
                     const char *check,
                     const char *twist,
                     uint64_t seed,
                     int64_t box_radius,
                     int64_t oracle_bound,
                     QtStatus *status);

/**
 * JSON seminorm evaluation of an element given as `(a1,..):coeff; ...`.
 *
 * # Safety
 * `ctx` must be a live handle; `terms` a valid NUL-terminated string.
 */
char *qt_seminorm_json(const QtContext *ctx,
                       const char *terms,
                       double rho,
                       uint32_t k,
                       bool shifted_weight,
                       QtStatus *status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QTORUS_H */

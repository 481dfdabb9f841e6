#ifndef OFFDEG_H
#define OFFDEG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OffdegResultant {
  OFFDEG_RESULTANT_SUBRESULTANT = 0,
  OFFDEG_RESULTANT_BAREISS = 1,
  OFFDEG_RESULTANT_INTERPOLATION = 2,
} OffdegResultant;

/**
 * Result codes; 0 to 4 match the command-line exit codes.
 */
typedef enum OffdegStatus {
  OFFDEG_STATUS_OK = 0,
  OFFDEG_STATUS_INTERNAL = 1,
  OFFDEG_STATUS_VALIDATION = 2,
  OFFDEG_STATUS_DEGENERACY = 3,
  OFFDEG_STATUS_COST_GUARD = 4,
  OFFDEG_STATUS_NULL_ARGUMENT = 5,
  OFFDEG_STATUS_INVALID_UTF8 = 6,
} OffdegStatus;

/**
 * An implicit curve `f(y1, y2) = 0`.
 */
typedef struct OffdegCurve OffdegCurve;

/**
 * A rational parametrization `(X/W, Y/W)` in `t`.
 */
typedef struct OffdegParametrization OffdegParametrization;

/**
 * Degrees of the generic offset. `delta_d` is meaningful only when
 * `has_delta_d` is set; the closed-form pair only for parametric input.
 */
typedef struct OffdegDegrees {
  uint32_t delta1;
  uint32_t delta2;
  bool has_delta_d;
  uint32_t delta_d;
  bool has_closed_form;
  uint32_t closed_form_delta1;
  uint32_t closed_form_delta2;
} OffdegDegrees;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next library call on the same thread.
 */
const char *offdeg_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *offdeg_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void offdeg_string_free(char *s);

/**
 * Parses and validates an implicit curve. With `symbolic` set the
 * parameter values are ignored and parameters stay symbolic.
 *
 * # Safety
 * `poly` and `params` must be NULL or NUL-terminated strings; `out` must be
 * NULL or point to writable storage for a handle.
 */
enum OffdegStatus offdeg_curve_new(const char *poly,
                                   const char *params,
                                   bool symbolic,
                                   struct OffdegCurve **out);

/**
 * # Safety
 * `curve` must be NULL or a handle from [`offdeg_curve_new`], not yet freed.
 */
void offdeg_curve_free(struct OffdegCurve *curve);

/**
 * Total degree of the curve equation.
 *
 * # Safety
 * `curve` must be a live handle and `out` writable.
 */
enum OffdegStatus offdeg_curve_degree(const struct OffdegCurve *curve, uint32_t *out);

/**
 * Computes `delta1`, `delta2` and `delta_d`.
 *
 * # Safety
 * `curve` must be a live handle and `out` writable.
 */
enum OffdegStatus offdeg_curve_degrees(const struct OffdegCurve *curve,
                                       enum OffdegResultant method,
                                       struct OffdegDegrees *out);

/**
 * Full report as a JSON record; release it with [`offdeg_string_free`].
 *
 * # Safety
 * `curve` must be a live handle and `out` writable.
 */
enum OffdegStatus offdeg_curve_report_json(const struct OffdegCurve *curve,
                                           enum OffdegResultant method,
                                           char **out);

/**
 * Parses and validates the parametrization `(x/w, y/w)`. `w` may be NULL
 * for a polynomial parametrization. With `reduce` set a common factor of
 * the three polynomials is divided out instead of being rejected.
 *
 * # Safety
 * String arguments must be NULL or NUL-terminated; `out` must be NULL or
 * writable.
 */
enum OffdegStatus offdeg_parametrization_new(const char *x,
                                             const char *y,
                                             const char *w,
                                             const char *params,
                                             bool symbolic,
                                             bool reduce,
                                             struct OffdegParametrization **out);

/**
 * # Safety
 * `p` must be NULL or a handle from [`offdeg_parametrization_new`], not yet freed.
 */
void offdeg_parametrization_free(struct OffdegParametrization *p);

/**
 * Computes `delta1`, `delta2` by the resultant formula and, in the
 * closed-form fields, by the second formula. A disagreement is reported
 * through the fields, not the status.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum OffdegStatus offdeg_parametrization_degrees(const struct OffdegParametrization *p,
                                                 enum OffdegResultant method,
                                                 struct OffdegDegrees *out);

/**
 * Full report as a JSON record; release it with [`offdeg_string_free`].
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum OffdegStatus offdeg_parametrization_report_json(const struct OffdegParametrization *p,
                                                     enum OffdegResultant method,
                                                     char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OFFDEG_H */

#ifndef SALPETER_BOUNDS_H
#define SALPETER_BOUNDS_H

/* Generated with cbindgen:0.27.0 */

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SbStatus {
  SB_STATUS_OK = 0,
  SB_STATUS_NULL_POINTER = 1,
  SB_STATUS_INVALID_ARGUMENT = 2,
  SB_STATUS_NOT_CONVERGED = 3,
  SB_STATUS_NUMERICAL_FAILURE = 4,
  SB_STATUS_PANIC = 5,
} SbStatus;

/**
 * Opaque evaluation context.
 */
typedef struct SbContext SbContext;

/**
 * Both bounds for one system.
 */
typedef struct SbBounds {
  double lower;
  double upper;
  double p_lower;
  double p_upper;
  double mu;
} SbBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * New context with relative tolerance `tol` for `e(m)` (pass 0 for the
 * default 1e-8). Returns null if `tol` is out of range.
 */
struct SbContext *sb_context_new(double tol);

/**
 * # Safety
 * `ctx` must be null or a pointer from [`sb_context_new`] not yet freed.
 */
void sb_context_free(struct SbContext *ctx);

/**
 * Ground energy `e(m)` of `√(m² + p²) + r²`.
 *
 * # Safety
 * `ctx` from [`sb_context_new`]; `out` writable.
 */
enum SbStatus sb_e_of_m(const struct SbContext *ctx, double m, double *out);

/**
 * # Safety
 * `ctx` from [`sb_context_new`]; `out` writable.
 */
enum SbStatus sb_p_of_m(const struct SbContext *ctx, double m, double *out);

/**
 * # Safety
 * `ctx` from [`sb_context_new`]; `out` writable.
 */
enum SbStatus sb_bounds(const struct SbContext *ctx,
                        uint32_t n,
                        double m,
                        double gamma,
                        struct SbBounds *out);

/**
 * # Safety
 * `ctx` from [`sb_context_new`]; `out` writable.
 */
enum SbStatus sb_lower_bound(const struct SbContext *ctx,
                             uint32_t n,
                             double m,
                             double gamma,
                             double *out);

/**
 * # Safety
 * `out` writable.
 */
enum SbStatus sb_upper_bound(uint32_t n, double m, double gamma, double *out);

/**
 * # Safety
 * `ctx` from [`sb_context_new`]; `out` writable.
 */
enum SbStatus sb_two_body_exact(const struct SbContext *ctx, double m, double gamma, double *out);

/**
 * Schrödinger-limit energy; needs `m > 0`.
 *
 * # Safety
 * `out` writable.
 */
enum SbStatus sb_nonrel_energy(uint32_t n, double m, double gamma, double *out);

/**
 * Static description of a status code.
 */
const char *sb_status_string(enum SbStatus status);

/**
 * Message for the last failure on this thread. Valid until the next
 * failing call on the same thread; empty if nothing has failed.
 */
const char *sb_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SALPETER_BOUNDS_H */

#ifndef FINV_H
#define FINV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Limit estimate applied to a ladder.
 */
typedef enum FinvAcceleration {
  FINV_ACCELERATION_NONE = 0,
  FINV_ACCELERATION_PAIRWISE_AVERAGING = 1,
  FINV_ACCELERATION_ITERATED_AVERAGING = 2,
  FINV_ACCELERATION_EXTRAPOLATION = 3,
} FinvAcceleration;

/**
 * Result code of every fallible call.
 */
typedef enum FinvStatus {
  FINV_STATUS_OK = 0,
  FINV_STATUS_NULL_POINTER = 1,
  FINV_STATUS_INVALID_ARGUMENT = 2,
  FINV_STATUS_UNKNOWN_FUNCTION = 3,
  FINV_STATUS_PRECONDITION = 4,
  /**
   * The value was produced but a quadrature missed its tolerance.
   */
  FINV_STATUS_NOT_CONVERGED = 5,
  FINV_STATUS_NUMERICAL = 6,
  /**
   * The requested quantity does not exist (e.g. no reference value).
   */
  FINV_STATUS_UNAVAILABLE = 7,
  FINV_STATUS_PANIC = 8,
} FinvStatus;

/**
 * Opaque one-dimensional catalog function.
 */
typedef struct FinvFunction FinvFunction;

/**
 * Opaque two-dimensional catalog function.
 */
typedef struct FinvFunction2D FinvFunction2D;

/**
 * Opaque truncation ladder.
 */
typedef struct FinvLadder FinvLadder;

/**
 * Opaque inversion report.
 */
typedef struct FinvReport FinvReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len − 1` bytes). Returns the full message length in bytes.
 */
size_t finv_last_error_message(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *finv_version(void);

/**
 * Look up a one-dimensional catalog entry by id.
 */
enum FinvStatus finv_function_lookup(const char *id, struct FinvFunction **out);

void finv_function_free(struct FinvFunction *f);

/**
 * `f(x)`.
 */
enum FinvStatus finv_function_eval(const struct FinvFunction *f, double x, double *out);

/**
 * Numerical `f̂(s)` with its error estimate.
 */
enum FinvStatus finv_fourier_transform(const struct FinvFunction *f,
                                       double s,
                                       double abs_tol,
                                       double rel_tol,
                                       double *out_re,
                                       double *out_im,
                                       double *out_error);

/**
 * A ladder from `n` strictly increasing positive radii.
 */
enum FinvStatus finv_ladder_new(const double *radii,
                                size_t n,
                                enum FinvAcceleration acceleration,
                                struct FinvLadder **out);

/**
 * The default ladder: 25, 50, …, 800 with extrapolation.
 */
struct FinvLadder *finv_ladder_default(void);

void finv_ladder_free(struct FinvLadder *l);

/**
 * Truncated inversion integrals of `f` at `x` along `ladder`.
 */
enum FinvStatus finv_invert_at(const struct FinvFunction *f,
                               double x,
                               const struct FinvLadder *ladder,
                               double abs_tol,
                               double rel_tol,
                               struct FinvReport **out);

/**
 * Inversion at `x` from the restriction of `f` to `[x1, x2]`.
 */
enum FinvStatus finv_localize_invert(const struct FinvFunction *f,
                                     double x1,
                                     double x2,
                                     double x,
                                     const struct FinvLadder *ladder,
                                     double abs_tol,
                                     double rel_tol,
                                     struct FinvReport **out);

/**
 * Look up a two-dimensional catalog entry by id.
 */
enum FinvStatus finv_function2d_lookup(const char *id, struct FinvFunction2D **out);

void finv_function2d_free(struct FinvFunction2D *f);

/**
 * Iterated-limit inversion of a two-dimensional entry at `(x, y)`.
 */
enum FinvStatus finv_invert2d_at(const struct FinvFunction2D *f,
                                 double x,
                                 double y,
                                 const struct FinvLadder *ladder1,
                                 const struct FinvLadder *ladder2,
                                 double abs_tol,
                                 double rel_tol,
                                 struct FinvReport **out);

void finv_report_free(struct FinvReport *r);

/**
 * Number of ladder rows in a report; 0 for NULL.
 */
size_t finv_report_len(const struct FinvReport *r);

/**
 * Row `i`: radius and partial value.
 */
enum FinvStatus finv_report_partial(const struct FinvReport *r,
                                    size_t i,
                                    double *out_r,
                                    double *out_re,
                                    double *out_im);

/**
 * Accelerated limit estimate and the accumulated error estimate.
 */
enum FinvStatus finv_report_accelerated(const struct FinvReport *r,
                                        double *out_re,
                                        double *out_im,
                                        double *out_error_estimate);

/**
 * `|accelerated − f(x)|`; `FINV_STATUS_UNAVAILABLE` without a reference.
 */
enum FinvStatus finv_report_abs_error(const struct FinvReport *r, double *out);

/**
 * `(1/2πi) ∫_{−R}^{R} e^{ipx}/(x − w) dx` with `w = w_re + i w_im`.
 */
enum FinvStatus finv_heaviside_kernel(double p,
                                      double w_re,
                                      double w_im,
                                      double r,
                                      double *out_re,
                                      double *out_im,
                                      double *out_error);

/**
 * Arc bound for `p > 0`, `R > 2|w|`.
 */
enum FinvStatus finv_semicircle_bound(double p, double r, double w_modulus, double *out);

/**
 * `∫_0^R sin(x)/x dx`; `R = +∞` gives `π/2`.
 */
enum FinvStatus finv_sinc_integral(double r, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FINV_H */

#ifndef ZETAREP_H
#define ZETAREP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ZrCoeffKind {
  ZR_COEFF_KIND_A = 0,
  ZR_COEFF_KIND_B = 1,
  ZR_COEFF_KIND_C = 2,
} ZrCoeffKind;

typedef enum ZrMethod {
  ZR_METHOD_INTEGRAL = 0,
  ZR_METHOD_SERIES = 1,
} ZrMethod;

/**
 * Result codes shared by every function in this library.
 */
typedef enum ZrStatus {
  ZR_STATUS_OK = 0,
  ZR_STATUS_NULL_POINTER = 1,
  ZR_STATUS_INVALID_ARGUMENT = 2,
  ZR_STATUS_DOMAIN = 3,
  ZR_STATUS_POLE = 4,
  ZR_STATUS_UNSUPPORTED = 5,
  ZR_STATUS_PRECISION_BUDGET = 6,
  ZR_STATUS_NON_CONVERGENCE = 7,
  ZR_STATUS_OVERFLOW = 8,
  ZR_STATUS_OUT_OF_RANGE = 9,
  ZR_STATUS_PANIC = 10,
} ZrStatus;

/**
 * A table of Taylor or reciprocal coefficients.
 */
typedef struct ZrCoeffTable ZrCoeffTable;

/**
 * Working precision and target tolerance.
 */
typedef struct ZrContext ZrContext;

typedef struct ZrComplex {
  double re;
  double im;
} ZrComplex;

/**
 * A value rounded to double precision, with its error estimate and cost.
 */
typedef struct ZrEval {
  struct ZrComplex value;
  double error_estimate;
  /**
   * Series terms or quadrature nodes.
   */
  size_t effort;
  uint32_t precision_bits;
  /**
   * True when `value` is (s-1)ζ(s) at the pole s = 1.
   */
  bool pole;
} ZrEval;

typedef struct ZrZero {
  struct ZrComplex s;
  double residual;
  double func_eq_residual;
  size_t iterations;
} ZrZero;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL after a
 * successful call. The pointer stays valid until the next call on the
 * same thread.
 */
const char *zr_last_error(void);

/**
 * Frees a string returned through an `out_text` parameter. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be freed twice.
 */
void zr_string_free(char *s);

/**
 * Creates a context with `bits` of working precision. A `target_tol` of 0
 * selects 2^-(bits-24).
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum ZrStatus zr_context_new(uint32_t bits, double target_tol, struct ZrContext **out);

/**
 * # Safety
 * `ctx` must be NULL or a handle from [`zr_context_new`] not yet freed.
 */
void zr_context_free(struct ZrContext *ctx);

/**
 * # Safety
 * `ctx` must be a live context handle; the outputs must be NULL or writable.
 */
enum ZrStatus zr_context_info(const struct ZrContext *ctx, uint32_t *bits, double *target_tol);

/**
 * Evaluates ζ(s). `s` is text such as "0.5+14.1i" and is read at the
 * context precision. `max_terms` bounds the series method and is ignored by
 * the integral method. When `out_text` is not NULL it receives the value with
 * full digits, to be released with [`zr_string_free`].
 *
 * # Safety
 * `ctx` must be a live context, `s` a NUL-terminated string, `out` writable,
 * and `out_text` NULL or writable.
 */
enum ZrStatus zr_zeta(const struct ZrContext *ctx,
                      const char *s,
                      enum ZrMethod method,
                      size_t max_terms,
                      struct ZrEval *out,
                      char **out_text);

/**
 * Evaluates the finite binomial sum S_n(s) for n ≥ 1.
 *
 * # Safety
 * Same requirements as [`zr_zeta`].
 */
enum ZrStatus zr_sn(const struct ZrContext *ctx,
                    const char *s,
                    size_t n,
                    struct ZrComplex *out,
                    char **out_text);

/**
 * Refines a zero of ζ in the critical strip from the guess `guess`.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum ZrStatus zr_refine_zero(const struct ZrContext *ctx,
                             struct ZrComplex guess,
                             struct ZrZero *out);

/**
 * Computes coefficients 0..=n_max. `y` is the imaginary part of the
 * expansion point for kinds B and C and is ignored for kind A.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum ZrStatus zr_coeffs_new(const struct ZrContext *ctx,
                            enum ZrCoeffKind kind,
                            double y,
                            size_t n_max,
                            struct ZrCoeffTable **out);

/**
 * # Safety
 * `table` must be NULL or a handle from [`zr_coeffs_new`] not yet freed.
 */
void zr_coeffs_free(struct ZrCoeffTable *table);

/**
 * Number of coefficients held, or 0 for NULL.
 *
 * # Safety
 * `table` must be NULL or a live table handle.
 */
size_t zr_coeffs_len(const struct ZrCoeffTable *table);

/**
 * Largest absolute error estimate over the table, or NaN for NULL.
 *
 * # Safety
 * `table` must be NULL or a live table handle.
 */
double zr_coeffs_error_estimate(const struct ZrCoeffTable *table);

/**
 * Reads coefficient `n`. `digits` sets the length of `out_text` and is
 * ignored when `out_text` is NULL.
 *
 * # Safety
 * `table` must be a live table handle, `out` writable, and `out_text` NULL
 * or writable.
 */
enum ZrStatus zr_coeffs_get(const struct ZrCoeffTable *table,
                            size_t n,
                            size_t digits,
                            struct ZrComplex *out,
                            char **out_text);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ZETAREP_H */

#ifndef CHARVAR_H
#define CHARVAR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
typedef enum CvStatus {
  CV_STATUS_OK = 0,
  /**
   * Bad arguments.
   */
  CV_STATUS_USAGE = 1,
  /**
   * Request too large.
   */
  CV_STATUS_BUDGET = 2,
  /**
   * An identity that must hold exactly failed.
   */
  CV_STATUS_CONSISTENCY = 3,
  /**
   * Arithmetic failure (division by zero, mismatched variables).
   */
  CV_STATUS_ARITHMETIC = 4,
  CV_STATUS_PARSE = 5,
  /**
   * A required pointer was null.
   */
  CV_STATUS_NULL_POINTER = 6,
  /**
   * The library panicked; this is a bug.
   */
  CV_STATUS_PANIC = 7,
} CvStatus;

/**
 * A Laurent polynomial with rational coefficients.
 */
typedef struct CvPoly CvPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * `E_n(q)`.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum CvStatus cv_epoly(uint32_t n, uint32_t g, struct CvPoly **out);

/**
 * `H̄_n(z, w)`.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum CvStatus cv_hbar(uint32_t n, uint32_t g, struct CvPoly **out);

/**
 * Conjectural mixed Hodge polynomial in `(q, t)`; `pgl` divides out `(1+qt)^{2g}`.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum CvStatus cv_mhp(uint32_t n, uint32_t g, bool pgl, struct CvPoly **out);

/**
 * `A_n(q)`, computed by both routes and compared.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum CvStatus cv_apoly(uint32_t n, uint32_t g, struct CvPoly **out);

/**
 * Euler characteristic of the PGL_n variety.
 *
 * # Safety
 * `out` must be valid for writing one `int64_t`.
 */
enum CvStatus cv_euler(uint32_t n, uint32_t g, int64_t *out);

/**
 * Coefficient of `T^n` in the untwisted series at genus `g`.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum CvStatus cv_untwisted_coeff(uint32_t g, uint32_t n, struct CvPoly **out);

/**
 * Mixed Hodge polynomial of the rank-2 variety from its cohomology ring.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum CvStatus cv_m2_ring(uint32_t g, struct CvPoly **out);

/**
 * Brute-force count of `2g`-tuples in `GL_n(F_q)` whose product of
 * commutators is `ζ_n I` (`twisted`) or `I`, as a decimal string.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum CvStatus cv_oracle_genus_count(uint32_t n, uint32_t q, uint32_t g, bool twisted, char **out);

/**
 * Runs a named identity check (`g0`, `g0u`, `g1`, `gh`, `duality`, `t-minus-one`).
 * A failed identity is reported through `passed`, not the status.
 *
 * # Safety
 * `check` must be a NUL-terminated string; `passed` must be valid for writing.
 */
enum CvStatus cv_verify(const char *check, uint32_t order, uint32_t g, bool *passed);

/**
 * Canonical JSON `{"vars":[..],"terms":[{"e":[..],"c":"num/den"}]}`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be valid for writing one pointer.
 */
enum CvStatus cv_poly_to_json(const struct CvPoly *p, char **out);

/**
 * Canonical text form, e.g. `1 - 2*q + q^2`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be valid for writing one pointer.
 */
enum CvStatus cv_poly_to_string(const struct CvPoly *p, char **out);

/**
 * Number of nonzero terms, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
uintptr_t cv_poly_num_terms(const struct CvPoly *p);

/**
 * Frees a handle. Null is ignored.
 *
 * # Safety
 * `p` must be null or a handle not yet freed.
 */
void cv_poly_free(struct CvPoly *p);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void cv_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. Owned by the
 * library and valid until the next call on the same thread.
 */
const char *cv_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHARVAR_H */

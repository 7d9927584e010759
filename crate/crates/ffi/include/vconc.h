#ifndef VCONC_H
#define VCONC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VconcStatus {
  VCONC_STATUS_OK = 0,
  VCONC_STATUS_NULL_POINTER = 1,
  VCONC_STATUS_INVALID_ARGUMENT = 2,
  VCONC_STATUS_VALIDATION = 3,
  VCONC_STATUS_COMPUTATION_LIMIT = 4,
  VCONC_STATUS_NOT_ADMISSIBLE = 5,
  VCONC_STATUS_NOT_REGULAR = 6,
  VCONC_STATUS_NOT_FOUND = 7,
  VCONC_STATUS_PARSE = 8,
  VCONC_STATUS_SINGULAR = 9,
  VCONC_STATUS_NOT_INVARIANT = 10,
  VCONC_STATUS_INTERNAL = 11,
  VCONC_STATUS_PANIC = 12,
} VconcStatus;

typedef enum VconcSide {
  VCONC_SIDE_PLUS = 0,
  VCONC_SIDE_MINUS = 1,
} VconcSide;

/**
 * Opaque couple handle.
 */
typedef struct VconcCouple VconcCouple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *vconc_last_error(void);

/**
 * Parse a couple from the JSON couple format
 * (`{"name", "ring", "a_plus", "a_minus"}` with string entries).
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum VconcStatus vconc_couple_from_json(const char *json, struct VconcCouple **out);

/**
 * # Safety
 * `name` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum VconcStatus vconc_couple_fixture(const char *name, struct VconcCouple **out);

/**
 * The K(m, n) couple shifted `i` times.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum VconcStatus vconc_couple_kmn(int64_t m, int64_t n, int64_t i, struct VconcCouple **out);

/**
 * # Safety
 * `c` must be null or a handle from a `vconc_couple_*` constructor, not yet freed.
 */
void vconc_couple_free(struct VconcCouple *c);

/**
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum VconcStatus vconc_couple_dim(const struct VconcCouple *c, size_t *out);

/**
 * Order of one side in the rational concordance group: 1, 2 or 4, and 0 for infinite.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum VconcStatus vconc_order(const struct VconcCouple *c, enum VconcSide side, uint32_t *out);

/**
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum VconcStatus vconc_is_metabolic(const struct VconcCouple *c, enum VconcSide side, bool *out);

/**
 * Arf invariant (0 or 1) of an integral couple with regular F_2 form.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum VconcStatus vconc_arf(const struct VconcCouple *c, enum VconcSide side, uint8_t *out);

/**
 * Full invariant report as a JSON string, released with [`vconc_string_free`].
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum VconcStatus vconc_report_json(const struct VconcCouple *c, enum VconcSide side, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void vconc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VCONC_H */

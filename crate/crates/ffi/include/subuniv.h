#ifndef SUBUNIV_H
#define SUBUNIV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SubunivStatus {
  SUBUNIV_STATUS_OK = 0,
  SUBUNIV_STATUS_NULL_POINTER = 1,
  SUBUNIV_STATUS_INVALID_UTF8 = 2,
  SUBUNIV_STATUS_PARSE = 3,
  SUBUNIV_STATUS_INVALID_STRUCTURE = 4,
  SUBUNIV_STATUS_SIZE_LIMIT = 5,
  SUBUNIV_STATUS_UNKNOWN_ID = 6,
  SUBUNIV_STATUS_INTERNAL = 7,
} SubunivStatus;

/**
 * Opaque structure handle.
 */
typedef struct SubunivStructure SubunivStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a structure from JSON text (`{"labels", "covers"}` or
 * `{"n", "joins"}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SubunivStatus subuniv_structure_from_json(const char *json, struct SubunivStructure **out);

/**
 * Builds a catalog structure by id, e.g. `"H5"` or `"U14"`.
 *
 * # Safety
 * `id` must be a NUL-terminated string; `out` must be writable.
 */
enum SubunivStatus subuniv_structure_named(const char *id, struct SubunivStructure **out);

/**
 * # Safety
 * `s` must be null or a handle from this library not yet freed.
 */
void subuniv_structure_free(struct SubunivStructure *s);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum SubunivStatus subuniv_structure_size(const struct SubunivStructure *s, size_t *out);

/**
 * Number of subuniverses, including the empty set.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum SubunivStatus subuniv_count(const struct SubunivStructure *s, uint64_t *out);

/**
 * σ_k as `mantissa · 2^exponent` with an odd mantissa (or zero).
 *
 * # Safety
 * `s` must be a live handle; `mantissa` and `exponent` must be writable.
 */
enum SubunivStatus subuniv_sigma(const struct SubunivStructure *s,
                                 int32_t k,
                                 uint64_t *mantissa,
                                 int32_t *exponent);

/**
 * Whether the subset with bit `i` set for element `i` is closed.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum SubunivStatus subuniv_is_subuniverse(const struct SubunivStructure *s,
                                          uint32_t mask,
                                          bool *out);

/**
 * Number of `n`-element join-semilattices up to isomorphism.
 *
 * # Safety
 * `out` must be writable.
 */
enum SubunivStatus subuniv_enumerate_count(size_t n, uint64_t *out);

/**
 * Theorem report for size `n` as JSON; release with `subuniv_string_free`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SubunivStatus subuniv_verify_theorem_json(size_t n, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void subuniv_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null.
 */
const char *subuniv_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUBUNIV_H */

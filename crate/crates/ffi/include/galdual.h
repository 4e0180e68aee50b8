#ifndef GALDUAL_H
#define GALDUAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GdStatus {
  GD_STATUS_OK = 0,
  GD_STATUS_NULL_POINTER = 1,
  GD_STATUS_INVALID_UTF8 = 2,
  GD_STATUS_PARSE_ERROR = 3,
  GD_STATUS_INVALID_INPUT = 4,
  GD_STATUS_LIMIT_EXCEEDED = 5,
  GD_STATUS_PRECONDITION = 6,
  GD_STATUS_LAW_FAILED = 7,
  GD_STATUS_BUFFER_TOO_SMALL = 8,
  GD_STATUS_INTERNAL = 9,
} GdStatus;

/**
 * A set of permutations of one degree; a group when produced by a closure.
 */
typedef struct GdPermSet GdPermSet;

/**
 * A validated structure.
 */
typedef struct GdStructure GdStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *gd_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *gd_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void gd_string_free(char *s);

/**
 * Parses and validates a structure document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be a valid pointer.
 */
enum GdStatus gd_structure_from_json(const char *json, struct GdStructure **out);

/**
 * # Safety
 * `s` must be null or a handle from this library, not yet freed.
 */
void gd_structure_free(struct GdStructure *s);

/**
 * Domain size of a structure; 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t gd_structure_size(const struct GdStructure *s);

/**
 * Canonical JSON of a structure.
 *
 * # Safety
 * `s` must be a live handle; `out` must be a valid pointer.
 */
enum GdStatus gd_structure_to_json(const struct GdStructure *s, char **out);

/**
 * Automorphism group of a structure.
 *
 * # Safety
 * `s` must be a live handle; `out` must be a valid pointer.
 */
enum GdStatus gd_aut(const struct GdStructure *s, struct GdPermSet **out);

/**
 * Writes the block label of each element under `∼` into `labels`, which
 * must hold at least the domain size.
 *
 * # Safety
 * `s` must be a live handle; `labels` must point to `labels_len` writable values.
 */
enum GdStatus gd_sim_equiv(const struct GdStructure *s, size_t *labels, size_t labels_len);

/**
 * The permutations of a transform document, as given (not closed).
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be a valid pointer.
 */
enum GdStatus gd_permset_from_json(const char *json, struct GdPermSet **out);

/**
 * # Safety
 * `p` must be null or a handle from this library, not yet freed.
 */
void gd_permset_free(struct GdPermSet *p);

/**
 * Number of elements; 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t gd_permset_len(const struct GdPermSet *p);

/**
 * Degree; 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t gd_permset_degree(const struct GdPermSet *p);

/**
 * Copies the images of element `index` into `images`.
 *
 * # Safety
 * `p` must be a live handle; `images` must point to `images_len` writable values.
 */
enum GdStatus gd_permset_element(const struct GdPermSet *p,
                                 size_t index,
                                 size_t *images,
                                 size_t images_len);

/**
 * The group generated by a permutation set.
 *
 * # Safety
 * `p` must be a live handle; `out` must be a valid pointer.
 */
enum GdStatus gd_group_generate(const struct GdPermSet *p, struct GdPermSet **out);

/**
 * The `k`-closure of the group generated by a permutation set.
 *
 * # Safety
 * `p` must be a live handle; `out` must be a valid pointer.
 */
enum GdStatus gd_k_closure(const struct GdPermSet *p, size_t k, struct GdPermSet **out);

/**
 * Checks `law` (a `check --law` name) on a structure or transform document,
 * or on `count` seeded instances of size `n` when `input_json` is null
 * (0 selects the defaults). Writes the JSON report to `out_report` and
 * returns [`GdStatus::LawFailed`] when the law does not hold.
 *
 * # Safety
 * `law` must be a nul-terminated string; `input_json` null or nul-terminated;
 * `out_report` a valid pointer.
 */
enum GdStatus gd_check_law_json(const char *law,
                                const char *input_json,
                                size_t n,
                                size_t count,
                                uint64_t seed,
                                char **out_report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GALDUAL_H */

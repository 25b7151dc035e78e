#ifndef RVQ_H
#define RVQ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum RvqStatus {
  RVQ_STATUS_OK = 0,
  RVQ_STATUS_NULL_POINTER = 1,
  RVQ_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed permutation, walk or label.
   */
  RVQ_STATUS_PARSE = 3,
  /**
   * Induction move not defined.
   */
  RVQ_STATUS_MOVE_UNDEFINED = 4,
  /**
   * A vertex, element or search budget was exhausted.
   */
  RVQ_STATUS_BUDGET = 5,
  /**
   * Output buffer too small; the required length was written.
   */
  RVQ_STATUS_BUFFER_TOO_SMALL = 6,
  /**
   * The answer is not known (e.g. component not identified).
   */
  RVQ_STATUS_NOT_FOUND = 7,
  /**
   * Any other library error.
   */
  RVQ_STATUS_FAILED = 8,
  /**
   * A panic was caught at the boundary.
   */
  RVQ_STATUS_PANIC = 9,
} RvqStatus;

/**
 * Opaque generalized permutation.
 */
typedef struct RvqGp RvqGp;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread (empty after success).
 * Valid until the next call on the same thread.
 */
const char *rvq_last_error_message(void);

/**
 * Parses `"1 2 3 A A 4 / 4 3 B B 2 1"` or a representative label such as
 * `"tau_zorich(3)"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RvqStatus rvq_gp_parse(const char *text, struct RvqGp **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `gp` must come from this library and not be used afterwards.
 */
void rvq_gp_free(struct RvqGp *gp);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void rvq_string_free(char *s);

/**
 * Canonical one-line text of a permutation.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RvqStatus rvq_gp_to_string(const struct RvqGp *gp, char **out);

/**
 * Number of letters.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RvqStatus rvq_gp_letters(const struct RvqGp *gp, size_t *out);

/**
 * Irreducibility, and whether duplicates occur in both rows or in none.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RvqStatus rvq_gp_check(const struct RvqGp *gp, bool *irreducible, bool *convention);

/**
 * Stratum label such as `"Q(6,-1,-1)"` and genus.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RvqStatus rvq_gp_stratum(const struct RvqGp *gp, char **label, int64_t *genus);

/**
 * Applies a top (`bottom = false`) or bottom move, returning a new handle.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RvqStatus rvq_gp_move(const struct RvqGp *gp, bool bottom, struct RvqGp **out);

/**
 * Number of vertices of the Rauzy class (`reduced`: up to relabeling).
 *
 * # Safety
 * Pointers must be valid.
 */
enum RvqStatus rvq_class_size(const struct RvqGp *gp, bool reduced, size_t budget, size_t *out);

/**
 * Cocycle matrix of a walk over `t`, `b`, `T`, `B`, row-major into
 * `buf` (capacity `cap` entries). `dim` receives the side length; when
 * `dim * dim > cap` nothing is written and `BufferTooSmall` is returned.
 *
 * # Safety
 * Pointers must be valid; `buf` must hold `cap` entries.
 */
enum RvqStatus rvq_cocycle(const struct RvqGp *gp,
                           const char *walk,
                           bool minus,
                           int64_t *buf,
                           size_t cap,
                           size_t *dim);

/**
 * Component label such as `"H(4)^odd"`. `NotFound` when no certificate
 * is available. `cache_dir` may be null (no persistence).
 *
 * # Safety
 * Pointers must be valid.
 */
enum RvqStatus rvq_identify(const struct RvqGp *gp, const char *cache_dir, char **label);

/**
 * Order and index in `Sp(2g, F_p)` of the group generated by `cycles`
 * random cycles (length at most `max_len`) modulo `p`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RvqStatus rvq_group_mod_p(const struct RvqGp *gp,
                               uint64_t p,
                               bool minus,
                               size_t cycles,
                               size_t max_len,
                               uint64_t seed,
                               uint64_t *order,
                               uint64_t *index);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RVQ_H */

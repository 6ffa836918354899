#ifndef SWEEPMAP_H
#define SWEEPMAP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SweepAlgorithm {
  SWEEP_ALGORITHM_WEAK = 0,
  SWEEP_ALGORITHM_STRONG = 1,
} SweepAlgorithm;

/**
 * Result code of every fallible call.
 */
typedef enum SweepStatus {
  SWEEP_STATUS_OK = 0,
  /**
   * Non-coprime pair, malformed word, non-Dyck word, bad ranks.
   */
  SWEEP_STATUS_INVALID_INPUT = 1,
  /**
   * An internal invariant failed; this is a bug.
   */
  SWEEP_STATUS_INTERNAL = 2,
  SWEEP_STATUS_NULL_POINTER = 3,
  SWEEP_STATUS_INVALID_UTF8 = 4,
  /**
   * The result does not fit the output type.
   */
  SWEEP_STATUS_OVERFLOW = 5,
  SWEEP_STATUS_PANIC = 6,
} SweepStatus;

typedef enum SweepTraceLevel {
  SWEEP_TRACE_LEVEL_NONE = 0,
  SWEEP_TRACE_LEVEL_ROWS = 1,
  SWEEP_TRACE_LEVEL_FULL = 2,
} SweepTraceLevel;

/**
 * Opaque coprime pair `(m, n)`.
 */
typedef struct SweepPair SweepPair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a pair handle. Fails with `INVALID_INPUT` unless `m, n >= 1` and `gcd(m, n) = 1`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum SweepStatus sweep_pair_new(uint32_t m, uint32_t n, struct SweepPair **out);

/**
 * Releases a handle from [`sweep_pair_new`]. NULL is ignored.
 *
 * # Safety
 * `pair` must be NULL or a handle not yet freed.
 */
void sweep_pair_free(struct SweepPair *pair);

/**
 * # Safety
 * `pair` must be a live handle.
 */
uint32_t sweep_pair_m(const struct SweepPair *pair);

/**
 * # Safety
 * `pair` must be a live handle.
 */
uint32_t sweep_pair_n(const struct SweepPair *pair);

/**
 * Writes whether `word` is an (m,n)-Dyck word.
 *
 * # Safety
 * `pair` must be a live handle, `word` a NUL-terminated string, `out` writable.
 */
enum SweepStatus sweep_is_dyck(const struct SweepPair *pair, const char *word, bool *out);

/**
 * Writes the comma-separated starting ranks of `word`.
 *
 * # Safety
 * As [`sweep_is_dyck`]; the string written to `out` must be freed with [`sweep_string_free`].
 */
enum SweepStatus sweep_step_ranks(const struct SweepPair *pair, const char *word, char **out);

/**
 * Writes the sweep image of `word` in the S/W alphabet.
 *
 * # Safety
 * As [`sweep_step_ranks`].
 */
enum SweepStatus sweep_map(const struct SweepPair *pair, const char *word, char **out);

/**
 * Writes the sweep pre-image of `word`.
 *
 * # Safety
 * As [`sweep_step_ranks`].
 */
enum SweepStatus sweep_invert(const struct SweepPair *pair,
                              const char *word,
                              enum SweepAlgorithm algorithm,
                              char **out);

/**
 * Writes the area of a Dyck word.
 *
 * # Safety
 * As [`sweep_is_dyck`].
 */
enum SweepStatus sweep_area(const struct SweepPair *pair, const char *word, uint64_t *out);

/**
 * Writes `C(m+n, n) / (m+n)`; `OVERFLOW` if it exceeds 64 bits.
 *
 * # Safety
 * `pair` must be a live handle and `out` writable.
 */
enum SweepStatus sweep_rational_catalan(const struct SweepPair *pair, uint64_t *out);

/**
 * Writes every Dyck word of the pair, one per line, in lexicographic order.
 *
 * # Safety
 * As [`sweep_rational_catalan`]; free the string with [`sweep_string_free`].
 */
enum SweepStatus sweep_enumerate(const struct SweepPair *pair, char **out);

/**
 * Runs an inversion and writes its trace document as JSON.
 *
 * # Safety
 * As [`sweep_step_ranks`].
 */
enum SweepStatus sweep_trace_json(const struct SweepPair *pair,
                                  const char *word,
                                  enum SweepAlgorithm algorithm,
                                  enum SweepTraceLevel level,
                                  char **out);

/**
 * Verifies the pair exhaustively and writes the report as JSON. The call
 * itself succeeds even when the report's `bijection_ok` is false.
 *
 * # Safety
 * As [`sweep_enumerate`].
 */
enum SweepStatus sweep_verify_json(const struct SweepPair *pair, char **out);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string from this library not yet freed.
 */
void sweep_string_free(char *s);

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next failing call on the same thread.
 */
const char *sweep_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SWEEPMAP_H */

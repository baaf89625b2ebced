#ifndef SMALLORB_H
#define SMALLORB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SmallorbStatus {
  SMALLORB_STATUS_OK = 0,
  SMALLORB_STATUS_NULL_POINTER = 1,
  SMALLORB_STATUS_INVALID_UTF8 = 2,
  SMALLORB_STATUS_PARSE_ERROR = 3,
  SMALLORB_STATUS_VALIDATION_ERROR = 4,
  SMALLORB_STATUS_NO_CHARACTERISTIC = 5,
  SMALLORB_STATUS_BUFFER_TOO_SMALL = 6,
  SMALLORB_STATUS_INTERNAL = 7,
  SMALLORB_STATUS_PANIC = 8,
} SmallorbStatus;

/**
 * A validated polytope together with its source document.
 */
typedef struct SmallorbPolytope SmallorbPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and validates a JSON polytope document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SmallorbStatus smallorb_polytope_from_json(const char *json, struct SmallorbPolytope **out);

/**
 * Builds a polytope from a family name (`cube`, `polygon`, `simplex`,
 * `prism`, `product`) and its integer parameters.
 *
 * # Safety
 * `family` must be NUL-terminated, `params` must point to `nparams` values
 * (or be null when `nparams` is 0), and `out` must be valid.
 */
enum SmallorbStatus smallorb_polytope_generate(const char *family,
                                               const size_t *params,
                                               size_t nparams,
                                               struct SmallorbPolytope **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `p` must come from this library and not be used afterwards.
 */
void smallorb_polytope_free(struct SmallorbPolytope *p);

/**
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum SmallorbStatus smallorb_polytope_dim(const struct SmallorbPolytope *p, size_t *out);

/**
 * Writes the h-vector (`dim + 1` entries). `written` always receives the
 * required length; a short buffer yields `BUFFER_TOO_SMALL`.
 *
 * # Safety
 * `buf` must hold `len` values; `p` and `written` must be valid.
 */
enum SmallorbStatus smallorb_h_vector(const struct SmallorbPolytope *p,
                                      int64_t *buf,
                                      size_t len,
                                      size_t *written);

/**
 * Counts s-characteristic functions, stopping after `limit` (0 means no limit).
 *
 * # Safety
 * `p`, `count` and `exhaustive` must be valid.
 */
enum SmallorbStatus smallorb_search_count(const struct SmallorbPolytope *p,
                                          size_t limit,
                                          size_t *count,
                                          bool *exhaustive);

/**
 * Writes the first s-characteristic function found by search as bit rows,
 * facet by facet (`facets * (dim - 1)` bytes).
 *
 * # Safety
 * `buf` must hold `len` bytes; `p` and `written` must be valid.
 */
enum SmallorbStatus smallorb_first_schar(const struct SmallorbPolytope *p,
                                         uint8_t *buf,
                                         size_t len,
                                         size_t *written);

/**
 * Runs a subcommand (`homology`, `crosscheck`, ...) and returns its JSON
 * report in `report`, to be freed with [`smallorb_string_free`]. `exit_code`
 * receives the command's exit code: 0 success, 1 input error, 2 disagreement.
 *
 * # Safety
 * `p` must be live; `command` NUL-terminated; `report` and `exit_code` valid.
 */
enum SmallorbStatus smallorb_run_command(const struct SmallorbPolytope *p,
                                         const char *command,
                                         uint64_t seed,
                                         char **report,
                                         int32_t *exit_code);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void smallorb_string_free(char *s);

/**
 * Message for the most recent failure on this thread, or an empty string.
 * Valid until the next call into the library from the same thread.
 */
const char *smallorb_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SMALLORB_H */

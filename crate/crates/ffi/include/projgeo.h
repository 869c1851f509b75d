#ifndef PROJGEO_H
#define PROJGEO_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum ProjgeoStatus {
  PROJGEO_STATUS_OK = 0,
  PROJGEO_STATUS_NULL_ARGUMENT = 1,
  PROJGEO_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON, a schema error or an invalid (q,l)-pair.
   */
  PROJGEO_STATUS_INVALID_CONFIG = 3,
  /**
   * Invalid arguments such as a bad selection, bound or preset.
   */
  PROJGEO_STATUS_INVALID_ARGUMENT = 4,
  /**
   * A script did not parse or a construction in it failed.
   */
  PROJGEO_STATUS_SCRIPT_ERROR = 5,
  /**
   * A checked statement or script assertion failed; output is still set.
   */
  PROJGEO_STATUS_CHECK_FAILED = 6,
  PROJGEO_STATUS_UNKNOWN_CHECK = 7,
  PROJGEO_STATUS_EMPTY_VIEWPORT = 8,
  PROJGEO_STATUS_EXHAUSTED_ATTEMPTS = 9,
  /**
   * The library panicked; this is a bug.
   */
  PROJGEO_STATUS_INTERNAL = 10,
} ProjgeoStatus;

/**
 * Opaque configuration handle.
 */
typedef struct ProjgeoConfig ProjgeoConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *projgeo_last_error(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void projgeo_string_free(char *s);

/**
 * Frees a configuration handle. Null is ignored.
 *
 * # Safety
 * `cfg` must come from this library and not have been freed.
 */
void projgeo_config_free(struct ProjgeoConfig *cfg);

/**
 * A seeded random configuration with integer coordinates in
 * `[-bound, bound]`; `omega` makes g the line at infinity.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ProjgeoStatus projgeo_config_generate(uint64_t seed,
                                           int64_t bound,
                                           bool omega,
                                           struct ProjgeoConfig **out);

/**
 * Parses and validates a JSON configuration document.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum ProjgeoStatus projgeo_config_from_json(const char *json, struct ProjgeoConfig **out);

/**
 * Serializes a configuration; free the result with `projgeo_string_free`.
 *
 * # Safety
 * `cfg` must be a live handle and `out` a valid pointer.
 */
enum ProjgeoStatus projgeo_config_to_json(const struct ProjgeoConfig *cfg, char **out);

/**
 * A new handle carrying every derived object for all six vertex pairs
 * and the given index selection (null means "1234").
 *
 * # Safety
 * `cfg` must be a live handle, `selection` null or a nul-terminated
 * string, and `out` a valid pointer.
 */
enum ProjgeoStatus projgeo_config_construct(const struct ProjgeoConfig *cfg,
                                            const char *selection,
                                            struct ProjgeoConfig **out);

/**
 * Runs one check (or all of them when `check` is null) and writes the
 * reports as JSON lines. Returns `CheckFailed` with the reports set when
 * any check fails.
 *
 * # Safety
 * `check` must be null or a nul-terminated string; `report` a valid
 * pointer.
 */
enum ProjgeoStatus projgeo_verify(uint64_t seed,
                                  uint64_t trials,
                                  int64_t bound,
                                  bool omega,
                                  const char *check,
                                  char **report);

/**
 * Parses and evaluates a construction script, writing its diagnostics.
 * Returns `CheckFailed` when an assertion fails and `ScriptError` when the
 * script does not parse or a construction fails.
 *
 * # Safety
 * `source` must be a nul-terminated string; `diagnostics` a valid pointer.
 */
enum ProjgeoStatus projgeo_run_script(const char *source, char **diagnostics);

/**
 * Renders a figure preset (`quartets`, `theorem6`, `curves`, `prop4`,
 * `ninepoint`) with the default viewport.
 *
 * # Safety
 * `cfg` must be a live handle, `preset` a nul-terminated string,
 * `selection` null or a nul-terminated string, and `svg` a valid pointer.
 */
enum ProjgeoStatus projgeo_render_svg(const struct ProjgeoConfig *cfg,
                                      const char *preset,
                                      const char *selection,
                                      char **svg);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PROJGEO_H */

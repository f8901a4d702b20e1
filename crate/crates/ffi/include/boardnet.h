#ifndef BOARDNET_H
#define BOARDNET_H

/* Generated by cbindgen from boardnet-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call. `BN_OK` is zero; anything else is an
 * error and leaves a message for [`bn_last_error_message`].
 */
typedef enum {
  BN_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  BN_ERR_NULL = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  BN_ERR_UTF8 = 2,
  /**
   * A parameter, key, scenario id or column name was rejected.
   */
  BN_ERR_CONFIG = 3,
  /**
   * The simulation itself failed.
   */
  BN_ERR_RUNTIME = 4,
  /**
   * A file could not be written.
   */
  BN_ERR_IO = 5,
} BnStatus;

/**
 * Finished Monte Carlo output: per-year means and standard deviations.
 */
typedef struct BnAggregate BnAggregate;

/**
 * A scenario under construction: preset parameters plus any overrides.
 */
typedef struct BnScenario BnScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the library as a static NUL-terminated string.
 */
const char *bn_version(void);

/**
 * Message of the most recent error on the calling thread, or an empty
 * string if there has been none. The pointer stays valid until the next
 * failing call on the same thread; copy it if you need to keep it.
 */
const char *bn_last_error_message(void);

/**
 * Create a scenario from a preset id (A, B, C, D, E, Aprime or Bprime).
 * On success writes a handle to `out`; free it with [`bn_scenario_free`].
 *
 * # Safety
 * `id` must be a NUL-terminated string and `out` a valid pointer.
 */
BnStatus bn_scenario_preset(const char *id, BnScenario **out);

/**
 * Override one parameter. Keys and values are exactly those of a config
 * file (numbers arrive as their decimal text, enum values as their names,
 * e.g. `mode` = `biased`). Range checks run when the scenario does.
 *
 * # Safety
 * `scenario` must be a live handle; `key` and `value` must be
 * NUL-terminated strings.
 */
BnStatus bn_scenario_set(BnScenario *scenario, const char *key, const char *value);

/**
 * Run the scenario's full Monte Carlo experiment. On success writes an
 * aggregate handle to `out`; free it with [`bn_aggregate_free`]. The
 * scenario handle stays valid and can be adjusted and run again.
 *
 * # Safety
 * `scenario` must be a live handle and `out` a valid pointer.
 */
BnStatus bn_scenario_run(const BnScenario *scenario, BnAggregate **out);

/**
 * Number of year rows in the aggregate (the horizon plus the initial
 * year 0). Returns 0 for a NULL handle.
 *
 * # Safety
 * `aggregate` must be NULL or a live handle.
 */
size_t bn_aggregate_num_years(const BnAggregate *aggregate);

/**
 * Number of Monte Carlo runs behind the aggregate. Returns 0 for a NULL
 * handle.
 *
 * # Safety
 * `aggregate` must be NULL or a live handle.
 */
uint32_t bn_aggregate_runs(const BnAggregate *aggregate);

/**
 * Read one cell by CSV column name (e.g. `share_F_mean`). A cell that the
 * CSV leaves empty (a statistic undefined in every run) is returned as NaN
 * with `BN_OK`; an unknown column or out-of-range year is an error and
 * leaves `out` untouched.
 *
 * # Safety
 * `aggregate` must be a live handle, `column` a NUL-terminated string and
 * `out` a valid pointer.
 */
BnStatus bn_aggregate_value(const BnAggregate *aggregate,
                            size_t year,
                            const char *column,
                            double *out);

/**
 * Write the aggregate as CSV to `path`, replacing any existing file. The
 * bytes are identical to what the command line tool writes.
 *
 * # Safety
 * `aggregate` must be a live handle and `path` a NUL-terminated string.
 */
BnStatus bn_aggregate_write_csv(const BnAggregate *aggregate, const char *path);

/**
 * Release a scenario handle. NULL is a harmless no-op.
 *
 * # Safety
 * `scenario` must be NULL or a handle not freed before.
 */
void bn_scenario_free(BnScenario *scenario);

/**
 * Release an aggregate handle. NULL is a harmless no-op.
 *
 * # Safety
 * `aggregate` must be NULL or a handle not freed before.
 */
void bn_aggregate_free(BnAggregate *aggregate);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOARDNET_H */

#ifndef GAS_FFI_H
#define GAS_FFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum GasStatus {
  GAS_STATUS_OK = 0,
  GAS_STATUS_NULL_POINTER = 1,
  GAS_STATUS_INVALID_UTF8 = 2,
  GAS_STATUS_UNKNOWN_FUNCTION = 3,
  GAS_STATUS_UNKNOWN_ALGORITHM = 4,
  GAS_STATUS_INVALID_CONFIG = 5,
  GAS_STATUS_INVALID_DOMAIN = 6,
  GAS_STATUS_OUT_OF_DOMAIN = 7,
  GAS_STATUS_INDEX_OUT_OF_RANGE = 8,
  GAS_STATUS_BUFFER_TOO_SMALL = 9,
  GAS_STATUS_PANIC = 10,
  GAS_STATUS_INTERNAL = 11,
} GasStatus;

// How a run ended.
typedef enum GasRunStatus {
  GAS_RUN_STATUS_SOLVED = 0,
  GAS_RUN_STATUS_BUDGET_EXHAUSTED = 1,
  GAS_RUN_STATUS_STABILITY_HALT = 2,
} GasRunStatus;

// Opaque result of one run.
typedef struct GasTrace GasTrace;

// Objective supplied by the caller: returns f(x) for `dim` coordinates.
typedef double (*GasObjectiveFn)(const double *x, size_t dim, void *user_data);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *gas_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *gas_version(void);

// Number of registered test functions.
size_t gas_function_count(void);

// Name of registered function `index`. The string is static.
enum GasStatus gas_function_name(size_t index, const char **out_name);

// Dimension and known minimum value of a registered function.
enum GasStatus gas_function_info(const char *name, size_t *out_dim, double *out_min_value);

// Copies the search box of a registered function into `lower` and `upper`,
// each holding `len` doubles.
enum GasStatus gas_function_bounds(const char *name, double *lower, double *upper, size_t len);

// Evaluates a registered function at `x` (`len` coordinates, which must
// match its dimension and lie in its box).
enum GasStatus gas_evaluate(const char *name, const double *x, size_t len, double *out_value);

// One run of `algo` ("gas", "bh", "cs" or "de") with default settings on a
// registered function, aiming at its known minimum.
enum GasStatus gas_run(const char *algo,
                       const char *function,
                       uint64_t budget,
                       uint64_t seed,
                       struct GasTrace **out_trace);

// One run on a caller-supplied objective over the box `[lower, upper]`
// of dimension `dim`. `maximize` non-zero flips the sense. With
// `has_target` non-zero the run stops once the best value is within
// `tolerance` of `target`; otherwise GAS stops when its best value
// stabilizes and the other solvers use the whole budget.
enum GasStatus gas_run_custom(const char *algo,
                              GasObjectiveFn objective,
                              void *user_data,
                              size_t dim,
                              const double *lower,
                              const double *upper,
                              int maximize,
                              int has_target,
                              double target,
                              double tolerance,
                              uint64_t budget,
                              uint64_t seed,
                              struct GasTrace **out_trace);

// Releases a trace. Null is ignored.
void gas_trace_free(struct GasTrace *trace);

enum GasStatus gas_trace_status(const struct GasTrace *trace, enum GasRunStatus *out_status);

// Best value found, in the objective's own sense.
enum GasStatus gas_trace_best_value(const struct GasTrace *trace, double *out_value);

enum GasStatus gas_trace_reads_used(const struct GasTrace *trace, uint64_t *out_reads);

// Writes 1 and the solving read count if the target was reached, 0
// otherwise.
enum GasStatus gas_trace_solved_at(const struct GasTrace *trace,
                                   int *out_solved,
                                   uint64_t *out_reads);

// Length of the best position.
enum GasStatus gas_trace_dimension(const struct GasTrace *trace, size_t *out_dim);

// Copies the best position into `out` (at least the trace dimension).
enum GasStatus gas_trace_best_position(const struct GasTrace *trace, double *out, size_t len);

// Number of best-so-far samples.
enum GasStatus gas_trace_sample_count(const struct GasTrace *trace, size_t *out_count);

// Sample `index`: read count and best value at that point.
enum GasStatus gas_trace_sample(const struct GasTrace *trace,
                                size_t index,
                                uint64_t *out_reads,
                                double *out_value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAS_FFI_H */

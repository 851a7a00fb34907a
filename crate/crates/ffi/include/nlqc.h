#ifndef NLQC_H
#define NLQC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NlqcFlag {
  NLQC_FLAG_NONE = 0,
  NLQC_FLAG_NOT_CONTROLLABLY_CORRELATED = 1,
  NLQC_FLAG_NOT_CONTROLLABLY_ENTANGLED = 2,
} NlqcFlag;

typedef enum NlqcStatus {
  NLQC_STATUS_OK = 0,
  NLQC_STATUS_NULL_POINTER = 1,
  NLQC_STATUS_INVALID_ARGUMENT = 2,
  NLQC_STATUS_UNKNOWN_GATE = 3,
  NLQC_STATUS_INVALID_MATRIX = 4,
  NLQC_STATUS_NOT_APPLICABLE = 5,
  NLQC_STATUS_INTERNAL = 6,
} NlqcStatus;

// A validated two-qubit unitary.
typedef struct NlqcGate NlqcGate;

// Result of a bound evaluation.
typedef struct NlqcReport NlqcReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `len`). Returns the full message length in bytes.
//
// # Safety
// `buf` must be null or valid for `len` bytes.
size_t nlqc_last_error(char *buf, size_t len);

// Looks up a catalog gate by name (case-insensitive, common aliases).
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum NlqcStatus nlqc_gate_from_catalog(const char *name, struct NlqcGate **out);

// Builds a gate from 16 real and 16 imaginary parts, row-major.
//
// # Safety
// `re` and `im` must each point to 16 doubles; `out` must be valid.
enum NlqcStatus nlqc_gate_from_matrix(const double *re, const double *im, struct NlqcGate **out);

// # Safety
// `gate` must be null or a handle from this library, not yet freed.
void nlqc_gate_free(struct NlqcGate *gate);

// cc bound over both standard references and both wire orientations.
// `restarts` of 0 selects the default.
//
// # Safety
// `gate` must be a live handle and `out` a valid pointer.
enum NlqcStatus nlqc_cc_bound(const struct NlqcGate *gate,
                              uint64_t seed,
                              size_t restarts,
                              struct NlqcReport **out);

// ce bound with the Bell reference.
//
// # Safety
// `gate` must be a live handle and `out` a valid pointer.
enum NlqcStatus nlqc_ce_bound(const struct NlqcGate *gate,
                              uint64_t seed,
                              size_t restarts,
                              struct NlqcReport **out);

// # Safety
// `report` must be null or a handle from this library, not yet freed.
void nlqc_report_free(struct NlqcReport *report);

// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum NlqcStatus nlqc_report_bound(const struct NlqcReport *report, double *out);

// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum NlqcStatus nlqc_report_lambda1(const struct NlqcReport *report, double *out);

// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum NlqcStatus nlqc_report_lambda2(const struct NlqcReport *report, double *out);

// Writes the Bloch vectors of the two optimal inputs on B, three doubles each.
//
// # Safety
// `report` must be a live handle; `phi1` and `phi2` must each hold 3 doubles.
enum NlqcStatus nlqc_report_witnesses(const struct NlqcReport *report, double *phi1, double *phi2);

// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum NlqcStatus nlqc_report_flag(const struct NlqcReport *report, enum NlqcFlag *out);

// Noisy cc bound for an implementation within `eps < 1/4` in diamond norm.
//
// # Safety
// `out` must be a valid pointer.
enum NlqcStatus nlqc_noisy_cc_bound(double lambda1,
                                    double lambda2,
                                    double eps,
                                    uint32_t n_a,
                                    double *out);

// # Safety
// `out` must be a valid pointer.
enum NlqcStatus nlqc_noisy_ce_bound(double lambda1, double lambda2, double gamma, double *out);

// # Safety
// `out` must be a valid pointer.
enum NlqcStatus nlqc_delta_correction(double x, uint32_t n_a, double *out);

// Bound for `n` parallel copies; `NotApplicable` for ce with non-zero lambda2.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum NlqcStatus nlqc_parallel_repetition(const struct NlqcReport *report, uint32_t n, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NLQC_H */

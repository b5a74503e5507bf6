/*
 * C interface to the Ramanujan periodic transform library.
 *
 * Objects are opaque handles created by the create/read functions and
 * released with the matching destroy function. Every fallible call returns an
 * rpt_status; on failure rpt_last_error() describes the problem for the
 * calling thread until its next failing call.
 */
#ifndef RPT_RPT_H
#define RPT_RPT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef RPT_BUILDING_LIBRARY
#    define RPT_API __declspec(dllexport)
#  else
#    define RPT_API __declspec(dllimport)
#  endif
#else
#  define RPT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rpt_status {
  RPT_OK = 0,
  RPT_ERR_INVALID_ARGUMENT = 1,
  RPT_ERR_FORMAT = 2,
  RPT_ERR_IO = 3,
  RPT_ERR_NOT_REPRESENTABLE = 4,
  RPT_ERR_PRECISION = 5,
  RPT_ERR_INTERNAL = 6,
  RPT_ERR_BUFFER_TOO_SMALL = 7
} rpt_status;

typedef enum rpt_method { RPT_METHOD_RPT = 0, RPT_METHOD_NOTCH = 1 } rpt_method;

typedef struct rpt_plan rpt_plan;
typedef struct rpt_signal rpt_signal;
typedef struct rpt_report_set rpt_report_set;

/* Difference equation y = b0 x + b1 x[-1] + b2 x[-2] - a1 y[-1] - a2 y[-2]. */
typedef struct rpt_biquad {
  double b0, b1, b2, a1, a2;
  double f0, fs, q;
} rpt_biquad;

RPT_API const char* rpt_last_error(void);
RPT_API const char* rpt_status_string(rpt_status status);
RPT_API const char* rpt_version(void);

/* ---- number theory ---------------------------------------------------- */

RPT_API rpt_status rpt_euler_totient(size_t m, size_t* out);
/* *count always receives the divisor count; RPT_ERR_BUFFER_TOO_SMALL if capacity < *count. */
RPT_API rpt_status rpt_divisors(size_t n, size_t* out, size_t capacity, size_t* count);
/* Writes m values of s_m(0..m-1); capacity must be >= m. */
RPT_API rpt_status rpt_ramanujan_sum(size_t m, int64_t* out, size_t capacity);
RPT_API rpt_status rpt_verify_factorization(size_t m, double tol, int* ok);

/* ---- transform plans -------------------------------------------------- */

RPT_API rpt_status rpt_plan_create(size_t n, rpt_plan** out);
RPT_API void rpt_plan_destroy(rpt_plan* plan);
RPT_API size_t rpt_plan_length(const rpt_plan* plan);
/* Number of divisor spaces, i.e. groups in the coefficient layout. */
RPT_API size_t rpt_plan_space_count(const rpt_plan* plan);
/* Space `index` (ascending divisor order) owns coefficients [*begin, *end). */
RPT_API rpt_status rpt_plan_space(const rpt_plan* plan, size_t index, size_t* divisor, size_t* begin, size_t* end);
/* Unnormalized integer basis, column-major, n*n entries. */
RPT_API rpt_status rpt_plan_basis(const rpt_plan* plan, int64_t* out, size_t capacity);
RPT_API rpt_status rpt_plan_norm_scales(const rpt_plan* plan, double* out, size_t capacity);

/* All buffers below hold exactly rpt_plan_length(plan) doubles. */
RPT_API rpt_status rpt_forward(const rpt_plan* plan, const double* x, size_t len, double* beta);
RPT_API rpt_status rpt_inverse(const rpt_plan* plan, const double* beta, size_t len, double* x);
RPT_API rpt_status rpt_project(const rpt_plan* plan, const double* x, size_t len, size_t divisor, double* out);
/* One energy per space, in rpt_plan_space order. */
RPT_API rpt_status rpt_energy_spectrum(const rpt_plan* plan, const double* x, size_t len, double* energies,
                                       size_t capacity);
/* Zeroes the coefficients of the listed divisor spaces and resynthesizes. */
RPT_API rpt_status rpt_suppress_block(const rpt_plan* plan, const size_t* targets, size_t ntargets, const double* x,
                                      size_t len, double* out);

RPT_API rpt_status rpt_space_for_frequency(double f0, double fs, size_t n, uint64_t* bin, size_t* space);
/* Smallest block length putting f0 on an integer bin, or 0 if none up to 2^20. */
RPT_API size_t rpt_minimal_block_size(double f0, double fs);

/* ---- signals ----------------------------------------------------------- */

RPT_API rpt_status rpt_signal_create(const double* samples, size_t len, double fs, rpt_signal** out);
RPT_API void rpt_signal_destroy(rpt_signal* signal);
RPT_API size_t rpt_signal_length(const rpt_signal* signal);
RPT_API double rpt_signal_fs(const rpt_signal* signal);
/* Borrowed; valid until the signal is destroyed. */
RPT_API const double* rpt_signal_data(const rpt_signal* signal);

RPT_API rpt_status rpt_signal_read_csv(const char* path, size_t column, double fs, rpt_signal** out);
RPT_API rpt_status rpt_signal_read_wfdb212(const char* path, size_t channels, size_t select, double gain,
                                           int baseline, double fs, rpt_signal** out);
RPT_API rpt_status rpt_signal_write_csv(const rpt_signal* signal, const char* path);
RPT_API rpt_status rpt_signal_synth_ecg(double duration_s, double fs, double heart_rate_bpm, rpt_signal** out);
RPT_API rpt_status rpt_signal_add_sinusoid(const rpt_signal* signal, double f0, double amplitude, double phase,
                                           rpt_signal** out);
/* Raw 212 decoding of an in-memory buffer; *count receives the sample count. */
RPT_API rpt_status rpt_decode_212(const uint8_t* bytes, size_t len, size_t channels, size_t select, int* out,
                                  size_t capacity, size_t* count);

/* ---- suppression ------------------------------------------------------- */

RPT_API rpt_status rpt_denoise_rpt(const rpt_signal* signal, size_t block_size, const double* freqs, size_t nfreqs,
                                   unsigned workers, rpt_signal** out);
RPT_API rpt_status rpt_notch_design(double f0, double fs, double q, rpt_biquad* out);
RPT_API rpt_status rpt_notch_magnitude(const rpt_biquad* coeffs, double f, double* magnitude);
RPT_API rpt_status rpt_denoise_notch(const rpt_signal* signal, const rpt_biquad* coeffs, size_t block_size,
                                     rpt_signal** out);

/* ---- metrics ----------------------------------------------------------- */

RPT_API rpt_status rpt_block_error(const double* clean, const double* recon, size_t len, double* out);
RPT_API rpt_status rpt_compare_grid(const rpt_signal* clean, const rpt_signal* contaminated, const size_t* block_sizes,
                                    size_t nsizes, double f0, double q, unsigned workers, rpt_report_set** out);
RPT_API void rpt_report_set_destroy(rpt_report_set* set);
RPT_API size_t rpt_report_set_count(const rpt_report_set* set);
RPT_API rpt_status rpt_report_get(const rpt_report_set* set, size_t index, size_t* block_size, rpt_method* method,
                                  double* total, size_t* num_blocks);
/* Borrowed; valid until the set is destroyed. */
RPT_API rpt_status rpt_report_block_errors(const rpt_report_set* set, size_t index, const double** errors,
                                           size_t* count);
RPT_API rpt_status rpt_report_set_write_csv(const rpt_report_set* set, const char* path);
RPT_API rpt_status rpt_report_write_block_csv(const rpt_report_set* set, size_t index, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* RPT_RPT_H */

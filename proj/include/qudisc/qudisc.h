/*
 * qudisc: programmable unambiguous discrimination of two unknown qudit states.
 *
 * C interface to the shared library. Every fallible call returns a qd_status;
 * on failure qd_last_error() holds a message for the calling thread.
 *
 * Complex arrays are interleaved (re, im) doubles. Matrices are row-major.
 * Strings are returned through (buffer, capacity, required) triples: *required
 * always receives the size including the terminating NUL, a NULL buffer is a
 * size query, and a short buffer yields QD_ERR_BUFFER_TOO_SMALL.
 */
#ifndef QUDISC_H
#define QUDISC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QUDISC_BUILDING_LIBRARY)
#    define QD_API __declspec(dllexport)
#  else
#    define QD_API __declspec(dllimport)
#  endif
#else
#  define QD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qd_status {
  QD_OK = 0,
  QD_ERR_DOMAIN = 1,           /* argument outside the mathematical domain */
  QD_ERR_DEGENERATE_PRIOR = 2, /* eta1 in {0, 1} where an optimum is requested */
  QD_ERR_CONTRACT = 3,         /* precondition violated (norm, unitarity, sizes, parse) */
  QD_ERR_NULL_ARGUMENT = 4,
  QD_ERR_BUFFER_TOO_SMALL = 5,
  QD_ERR_INTERNAL = 6
} qd_status;

typedef enum qd_regime { QD_REGIME_LOW = 0, QD_REGIME_MIDDLE = 1, QD_REGIME_HIGH = 2 } qd_regime;

/* Output modes of the discriminator network. */
enum { QD_MODE_D1 = 0, QD_MODE_D2 = 1, QD_MODE_FAIL = 2 };

typedef struct qd_interferometer qd_interferometer;
typedef struct qd_report qd_report;

typedef struct qd_dimensions {
  int n;
  long dim_sigma, dim_s0, dim_s1, dim_s2, dim_s3, dim_s4, dim_s5, dim_s6, i0;
} qd_dimensions;

typedef struct qd_regime_result {
  double value;
  qd_regime regime;
  double x_star;
  double omega1_star;
} qd_regime_result;

typedef struct qd_mc_estimate {
  double mean;
  double std_error;
  uint64_t trials;
  uint64_t seed;
} qd_mc_estimate;

typedef struct qd_discrimination_stats {
  uint64_t shots;
  uint64_t seed;
  uint64_t counts[2][3]; /* [label - 1][D1, D2, F] */
  uint64_t successes;
  uint64_t errors;
  double empirical_success;
  double analytic_success;
  double sigma;
} qd_discrimination_stats;

QD_API const char* qd_version(void);
QD_API const char* qd_last_error(void);
QD_API const char* qd_status_string(qd_status status);

/* Subspace dimensions: closed form, or measured as ranks of built spans. */
QD_API qd_status qd_dimension_table(int n, qd_dimensions* out);
QD_API qd_status qd_constructive_dimensions(int n, qd_dimensions* out);

QD_API qd_status qd_x_from_omega1(double omega1, double* x);
QD_API qd_status qd_omega1_from_x(double x, double* omega1);
QD_API qd_status qd_omega2_constraint(double omega1, double* omega2);

QD_API qd_status qd_success_curve_x(double x, double eta1, double* out);
QD_API qd_status qd_average_success(int n, double omega1, double eta1, double* out);
QD_API qd_status qd_average_success_by_trace(int n, double omega1, double eta1, double* out);
/* psi1, psi2: n interleaved complex amplitudes each, unit norm. */
QD_API qd_status qd_pure_success(int n, const double* psi1, const double* psi2, double omega1, double eta1,
                                 double* out);

QD_API qd_status qd_optimal_subspace(double eta1, qd_regime_result* out);
QD_API qd_status qd_optimal_average(int n, double eta1, qd_regime_result* out);
QD_API qd_status qd_optimal_pure(double overlap_sq, double eta1, qd_regime_result* out);
QD_API const char* qd_regime_name(qd_regime regime);

QD_API qd_status qd_mc_success(int n, double omega1, double eta1, uint64_t trials, uint64_t seed,
                               qd_mc_estimate* out);
QD_API qd_status qd_simulate_discriminator(int n, double omega1, double eta1, uint64_t shots, uint64_t seed,
                                           qd_discrimination_stats* out);

/* Interferometers. Handles are owned by the caller; release with qd_interferometer_free. */
QD_API qd_status qd_discriminator_network(double omega1, qd_interferometer** out);
QD_API qd_status qd_prepare_state_network(const double* amplitudes, size_t n, qd_interferometer** out);
QD_API qd_status qd_reck_decompose(const double* unitary, size_t n, qd_interferometer** out);
QD_API qd_status qd_interferometer_parse(const char* text, qd_interferometer** out);
QD_API void qd_interferometer_free(qd_interferometer* net);
QD_API qd_status qd_interferometer_num_modes(const qd_interferometer* net, size_t* out);
QD_API qd_status qd_interferometer_num_layers(const qd_interferometer* net, size_t* out);
/* Writes num_modes^2 interleaved complex entries; capacity counts doubles. */
QD_API qd_status qd_interferometer_unitary(const qd_interferometer* net, double* out, size_t capacity);
QD_API qd_status qd_interferometer_serialize(const qd_interferometer* net, char* buffer, size_t capacity,
                                             size_t* required);
/* counts must hold num_modes entries. */
QD_API qd_status qd_simulate_clicks(const qd_interferometer* net, const double* input, size_t n, uint64_t shots,
                                    uint64_t seed, uint64_t* counts);

/* Verification report. tolerance < 0 keeps the built-in per-check tolerances. */
QD_API qd_status qd_verify(int n_max, double tolerance, qd_report** out);
QD_API void qd_report_free(qd_report* report);
QD_API int qd_report_passed(const qd_report* report);
QD_API size_t qd_report_num_checks(const qd_report* report);
QD_API size_t qd_report_num_failures(const qd_report* report);
QD_API qd_status qd_report_text(const qd_report* report, char* buffer, size_t capacity, size_t* required);
QD_API qd_status qd_report_json(const qd_report* report, char* buffer, size_t capacity, size_t* required);

#ifdef __cplusplus
}
#endif

#endif /* QUDISC_H */

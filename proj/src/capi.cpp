#include "qudisc/qudisc.h"

#include <cstring>
#include <new>
#include <string>

#include "qudisc/harness.hpp"
#include "qudisc/optics.hpp"
#include "qudisc/povm.hpp"
#include "qudisc/spaces.hpp"

struct qd_interferometer {
  qudisc::Interferometer net;
};

struct qd_report {
  qudisc::Report report;
};

namespace {

thread_local std::string g_last_error;

template <class F>
qd_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const qudisc::DegeneratePriorError& e) {
    g_last_error = e.what();
    return QD_ERR_DEGENERATE_PRIOR;
  } catch (const qudisc::DomainError& e) {
    g_last_error = e.what();
    return QD_ERR_DOMAIN;
  } catch (const qudisc::ContractError& e) {
    g_last_error = e.what();
    return QD_ERR_CONTRACT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QD_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QD_ERR_INTERNAL;
  }
}

qd_status null_argument(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return QD_ERR_NULL_ARGUMENT;
}

qudisc::CVector read_complex(const double* data, std::size_t n) {
  qudisc::CVector v(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) v(static_cast<Eigen::Index>(k)) = {data[2 * k], data[2 * k + 1]};
  return v;
}

qd_status write_string(const std::string& s, char* buffer, std::size_t capacity, std::size_t* required) {
  if (required) *required = s.size() + 1;
  if (!buffer) return QD_OK;
  if (capacity < s.size() + 1) {
    g_last_error = "buffer too small";
    return QD_ERR_BUFFER_TOO_SMALL;
  }
  std::memcpy(buffer, s.c_str(), s.size() + 1);
  return QD_OK;
}

void fill(const qudisc::DimensionTable& t, qd_dimensions* out) {
  *out = {t.n, t.dim_sigma, t.dim_s0, t.dim_s1, t.dim_s2, t.dim_s3, t.dim_s4, t.dim_s5, t.dim_s6, t.i0};
}

void fill(const qudisc::RegimeResult& r, qd_regime_result* out) {
  out->value = r.value;
  out->regime = static_cast<qd_regime>(static_cast<int>(r.regime));
  out->x_star = r.x_star;
  out->omega1_star = r.omega1_star;
}

qd_status wrap_network(qudisc::Interferometer net, qd_interferometer** out) {
  *out = new qd_interferometer{std::move(net)};
  return QD_OK;
}

}  // namespace

extern "C" {

const char* qd_version(void) { return QUDISC_VERSION_STRING; }

const char* qd_last_error(void) { return g_last_error.c_str(); }

const char* qd_status_string(qd_status status) {
  switch (status) {
    case QD_OK: return "ok";
    case QD_ERR_DOMAIN: return "domain error";
    case QD_ERR_DEGENERATE_PRIOR: return "degenerate priors";
    case QD_ERR_CONTRACT: return "contract violation";
    case QD_ERR_NULL_ARGUMENT: return "null argument";
    case QD_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case QD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

qd_status qd_dimension_table(int n, qd_dimensions* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    fill(qudisc::dimension_table(n), out);
    return QD_OK;
  });
}

qd_status qd_constructive_dimensions(int n, qd_dimensions* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    fill(qudisc::constructive_dimensions(n), out);
    return QD_OK;
  });
}

qd_status qd_x_from_omega1(double omega1, double* x) {
  if (!x) return null_argument("x");
  return guarded([&] {
    *x = qudisc::x_from_omega1(qudisc::checked_omega1(omega1));
    return QD_OK;
  });
}

qd_status qd_omega1_from_x(double x, double* omega1) {
  if (!omega1) return null_argument("omega1");
  return guarded([&] {
    *omega1 = qudisc::omega1_from_x(x);
    return QD_OK;
  });
}

qd_status qd_omega2_constraint(double omega1, double* omega2) {
  if (!omega2) return null_argument("omega2");
  return guarded([&] {
    *omega2 = qudisc::omega2_constraint(omega1);
    return QD_OK;
  });
}

qd_status qd_success_curve_x(double x, double eta1, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = qudisc::success_curve_x(x, qudisc::Priors::from_eta1(eta1));
    return QD_OK;
  });
}

qd_status qd_average_success(int n, double omega1, double eta1, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = qudisc::average_success(n, omega1, qudisc::Priors::from_eta1(eta1));
    return QD_OK;
  });
}

qd_status qd_average_success_by_trace(int n, double omega1, double eta1, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = qudisc::average_success_by_trace(n, omega1, qudisc::Priors::from_eta1(eta1));
    return QD_OK;
  });
}

qd_status qd_pure_success(int n, const double* psi1, const double* psi2, double omega1, double eta1, double* out) {
  if (!psi1 || !psi2) return null_argument("psi");
  if (!out) return null_argument("out");
  return guarded([&] {
    if (n < 1) throw qudisc::DomainError("qd_pure_success: n must be positive");
    const auto count = static_cast<std::size_t>(n);
    const qudisc::StateVector a({n, 1}, read_complex(psi1, count));
    const qudisc::StateVector b({n, 1}, read_complex(psi2, count));
    *out = qudisc::pure_success(a, b, omega1, qudisc::Priors::from_eta1(eta1), n);
    return QD_OK;
  });
}

qd_status qd_optimal_subspace(double eta1, qd_regime_result* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    fill(qudisc::optimal_subspace(qudisc::Priors::from_eta1(eta1)), out);
    return QD_OK;
  });
}

qd_status qd_optimal_average(int n, double eta1, qd_regime_result* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    fill(qudisc::optimal_average(n, qudisc::Priors::from_eta1(eta1)), out);
    return QD_OK;
  });
}

qd_status qd_optimal_pure(double overlap_sq, double eta1, qd_regime_result* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    fill(qudisc::optimal_pure(overlap_sq, qudisc::Priors::from_eta1(eta1)), out);
    return QD_OK;
  });
}

const char* qd_regime_name(qd_regime regime) {
  return qudisc::to_string(static_cast<qudisc::Regime>(static_cast<int>(regime)));
}

qd_status qd_mc_success(int n, double omega1, double eta1, uint64_t trials, uint64_t seed, qd_mc_estimate* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto est = qudisc::mc_success(n, omega1, qudisc::Priors::from_eta1(eta1), trials, seed);
    *out = {est.mean, est.std_error, est.trials, est.seed};
    return QD_OK;
  });
}

qd_status qd_simulate_discriminator(int n, double omega1, double eta1, uint64_t shots, uint64_t seed,
                                    qd_discrimination_stats* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto s = qudisc::simulate_discriminator(n, omega1, qudisc::Priors::from_eta1(eta1), shots, seed);
    out->shots = s.shots;
    out->seed = s.seed;
    for (int l = 0; l < 2; ++l)
      for (int k = 0; k < 3; ++k) out->counts[l][k] = s.counts[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
    out->successes = s.successes;
    out->errors = s.errors;
    out->empirical_success = s.empirical_success;
    out->analytic_success = s.analytic_success;
    out->sigma = s.sigma;
    return QD_OK;
  });
}

qd_status qd_discriminator_network(double omega1, qd_interferometer** out) {
  if (!out) return null_argument("out");
  return guarded([&] { return wrap_network(qudisc::discriminator_network(omega1).network, out); });
}

qd_status qd_prepare_state_network(const double* amplitudes, size_t n, qd_interferometer** out) {
  if (!amplitudes) return null_argument("amplitudes");
  if (!out) return null_argument("out");
  return guarded([&] {
    return wrap_network(qudisc::prepare_state_network(read_complex(amplitudes, n), static_cast<int>(n)), out);
  });
}

qd_status qd_reck_decompose(const double* unitary, size_t n, qd_interferometer** out) {
  if (!unitary) return null_argument("unitary");
  if (!out) return null_argument("out");
  return guarded([&] {
    qudisc::CMatrix u(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {unitary[2 * (r * n + c)],
                                                                          unitary[2 * (r * n + c) + 1]};
    return wrap_network(qudisc::reck_decompose(u), out);
  });
}

qd_status qd_interferometer_parse(const char* text, qd_interferometer** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  return guarded([&] { return wrap_network(qudisc::Interferometer::parse(text), out); });
}

void qd_interferometer_free(qd_interferometer* net) { delete net; }

qd_status qd_interferometer_num_modes(const qd_interferometer* net, size_t* out) {
  if (!net || !out) return null_argument("net/out");
  *out = static_cast<size_t>(net->net.num_modes());
  return QD_OK;
}

qd_status qd_interferometer_num_layers(const qd_interferometer* net, size_t* out) {
  if (!net || !out) return null_argument("net/out");
  *out = net->net.layers().size();
  return QD_OK;
}

qd_status qd_interferometer_unitary(const qd_interferometer* net, double* out, size_t capacity) {
  if (!net || !out) return null_argument("net/out");
  return guarded([&] {
    const auto u = net->net.unitary();
    const auto n = static_cast<std::size_t>(u.rows());
    if (capacity < 2 * n * n) {
      g_last_error = "buffer too small";
      return QD_ERR_BUFFER_TOO_SMALL;
    }
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const auto z = u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        out[2 * (r * n + c)] = z.real();
        out[2 * (r * n + c) + 1] = z.imag();
      }
    return QD_OK;
  });
}

qd_status qd_interferometer_serialize(const qd_interferometer* net, char* buffer, size_t capacity, size_t* required) {
  if (!net) return null_argument("net");
  return guarded([&] { return write_string(net->net.serialize(), buffer, capacity, required); });
}

qd_status qd_simulate_clicks(const qd_interferometer* net, const double* input, size_t n, uint64_t shots, uint64_t seed,
                             uint64_t* counts) {
  if (!net || !input || !counts) return null_argument("net/input/counts");
  return guarded([&] {
    const int modes = static_cast<int>(n);
    const qudisc::StateVector in({modes, 1}, read_complex(input, n));
    const auto stats = qudisc::simulate_clicks(net->net, in, shots, seed);
    std::copy(stats.counts.begin(), stats.counts.end(), counts);
    return QD_OK;
  });
}

qd_status qd_verify(int n_max, double tolerance, qd_report** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    qudisc::VerifyOptions options;
    if (tolerance >= 0.0) options.tolerance = tolerance;
    *out = new qd_report{qudisc::verify_all(n_max, options)};
    return QD_OK;
  });
}

void qd_report_free(qd_report* report) { delete report; }

int qd_report_passed(const qd_report* report) { return report && report->report.passed() ? 1 : 0; }

size_t qd_report_num_checks(const qd_report* report) { return report ? report->report.checks.size() : 0; }

size_t qd_report_num_failures(const qd_report* report) { return report ? report->report.failures() : 0; }

qd_status qd_report_text(const qd_report* report, char* buffer, size_t capacity, size_t* required) {
  if (!report) return null_argument("report");
  return guarded([&] { return write_string(report->report.to_text(), buffer, capacity, required); });
}

qd_status qd_report_json(const qd_report* report, char* buffer, size_t capacity, size_t* required) {
  if (!report) return null_argument("report");
  return guarded([&] { return write_string(report->report.to_json(), buffer, capacity, required); });
}

}  // extern "C"

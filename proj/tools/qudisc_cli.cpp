// Command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qudisc/qudisc.h"

namespace {

using Record = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rounds to 15 significant digits so records are stable across platforms.
double sig15(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

std::string fmt15(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", sig15(v));
  return buf;
}

void check(qd_status status) {
  if (status == QD_OK) return;
  const std::string detail = qd_last_error();
  throw UsageError(detail.empty() ? qd_status_string(status) : detail);
}

Record record(const std::string& command, Record parameters, Record results,
              std::optional<std::uint64_t> seed = std::nullopt) {
  Record r;
  r["command"] = command;
  r["version"] = qd_version();
  r["parameters"] = std::move(parameters);
  r["results"] = std::move(results);
  r["seed"] = seed ? Record(*seed) : Record(nullptr);
  return r;
}

void emit(const Record& r) { std::cout << r.dump(2) << '\n'; }

void require_open_prior(double eta1) {
  if (!(eta1 > 0.0 && eta1 < 1.0)) throw UsageError("eta1 must lie strictly between 0 and 1");
}

// Resolves the mutually exclusive --omega1 / --x pair.
double resolve_omega1(const std::optional<double>& omega1, const std::optional<double>& x) {
  if (omega1) {
    double unused = 0.0;
    check(qd_x_from_omega1(*omega1, &unused));
    return *omega1;
  }
  double w = 0.0;
  check(qd_omega1_from_x(*x, &w));
  return w;
}

std::string read_string(qd_status (*fn)(const qd_report*, char*, size_t, size_t*), const qd_report* report) {
  size_t size = 0;
  check(fn(report, nullptr, 0, &size));
  std::string s(size, '\0');
  check(fn(report, s.data(), s.size(), &size));
  s.resize(size - 1);
  return s;
}

std::string serialize(const qd_interferometer* net) {
  size_t size = 0;
  check(qd_interferometer_serialize(net, nullptr, 0, &size));
  std::string s(size, '\0');
  check(qd_interferometer_serialize(net, s.data(), s.size(), &size));
  s.resize(size - 1);
  return s;
}

// --- dims -----------------------------------------------------------------

struct DimsArgs {
  int n = 0;
  std::string format = "table";
};

int cmd_dims(const DimsArgs& a) {
  qd_dimensions t{};
  check(qd_dimension_table(a.n, &t));
  const std::pair<const char*, long> rows[] = {{"Sigma", t.dim_sigma}, {"S0", t.dim_s0}, {"S1", t.dim_s1},
                                               {"S2", t.dim_s2},       {"S3", t.dim_s3}, {"S4", t.dim_s4},
                                               {"S5", t.dim_s5},       {"S6", t.dim_s6}, {"i0", t.i0}};
  if (a.format == "table") {
    std::cout << "subspace dimension\n";
    for (const auto& [name, value] : rows) {
      char line[64];
      std::snprintf(line, sizeof line, "%-8s %ld\n", name, value);
      std::cout << line;
    }
    return kExitOk;
  }
  Record results;
  for (const auto& [name, value] : rows) results[name] = value;
  emit(record("dims", {{"n", a.n}}, std::move(results)));
  return kExitOk;
}

// --- verify ---------------------------------------------------------------

struct VerifyArgs {
  int n_max = 3;
  std::optional<double> tol;
  bool json = false;
};

int cmd_verify(const VerifyArgs& a) {
  double tol = -1.0;
  if (a.tol) {
    tol = *a.tol;
  } else if (const char* env = std::getenv("QUDISC_TOL"); env && *env) {
    char* end = nullptr;
    tol = std::strtod(env, &end);
    if (end == env || *end != '\0') throw UsageError("QUDISC_TOL is not a number");
  }
  if (a.tol && !(tol > 0.0)) throw UsageError("--tol must be positive");

  qd_report* report = nullptr;
  check(qd_verify(a.n_max, tol, &report));
  std::string body;
  try {
    body = read_string(a.json ? qd_report_json : qd_report_text, report);
  } catch (...) {
    qd_report_free(report);
    throw;
  }
  const bool passed = qd_report_passed(report) != 0;
  qd_report_free(report);
  std::cout << body;
  if (body.empty() || body.back() != '\n') std::cout << '\n';
  return passed ? kExitOk : kExitFailed;
}

// --- scan -----------------------------------------------------------------

struct ScanArgs {
  int n = 2;
  double eta1 = 0.5;
  int steps = 31;
  std::string format = "csv";
};

int cmd_scan(const ScanArgs& a) {
  require_open_prior(a.eta1);
  if (a.steps < 1) throw UsageError("--steps must be at least 1");
  qd_dimensions unused{};
  check(qd_dimension_table(a.n, &unused));

  const int rows = std::max(a.steps, 2);
  struct Row {
    double omega1, x, p_average, p_subspace;
  };
  std::vector<Row> table;
  table.reserve(static_cast<std::size_t>(rows));
  for (int k = 0; k < rows; ++k) {
    Row r{};
    r.x = 1.0 + 3.0 * k / (rows - 1);
    check(qd_omega1_from_x(r.x, &r.omega1));
    check(qd_average_success(a.n, r.omega1, a.eta1, &r.p_average));
    check(qd_success_curve_x(r.x, a.eta1, &r.p_subspace));
    table.push_back(r);
  }

  if (a.format == "csv") {
    std::cout << "omega1,x,p_average,p_subspace\n";
    for (const auto& r : table)
      std::cout << fmt15(r.omega1) << ',' << fmt15(r.x) << ',' << fmt15(r.p_average) << ',' << fmt15(r.p_subspace)
                << '\n';
    return kExitOk;
  }
  Record body = Record::array();
  for (const auto& r : table)
    body.push_back({{"omega1", sig15(r.omega1)},
                    {"x", sig15(r.x)},
                    {"p_average", sig15(r.p_average)},
                    {"p_subspace", sig15(r.p_subspace)}});
  emit(record("scan", {{"n", a.n}, {"eta1", sig15(a.eta1)}, {"steps", a.steps}}, {{"rows", std::move(body)}}));
  return kExitOk;
}

// --- optimal --------------------------------------------------------------

struct OptimalArgs {
  int n = 2;
  double eta1 = 0.5;
  std::optional<double> overlap_sq;
};

int cmd_optimal(const OptimalArgs& a) {
  require_open_prior(a.eta1);
  qd_regime_result sub{}, avg{};
  check(qd_optimal_subspace(a.eta1, &sub));
  check(qd_optimal_average(a.n, a.eta1, &avg));

  Record params{{"n", a.n}, {"eta1", sig15(a.eta1)}};
  Record results{{"regime", qd_regime_name(avg.regime)},
                 {"x_star", sig15(avg.x_star)},
                 {"omega1_star", sig15(avg.omega1_star)},
                 {"p_subspace_opt", sig15(sub.value)},
                 {"p_average_opt", sig15(avg.value)}};
  if (a.overlap_sq) {
    qd_regime_result pure{};
    check(qd_optimal_pure(*a.overlap_sq, a.eta1, &pure));
    params["overlap_sq"] = sig15(*a.overlap_sq);
    results["p_pure_opt"] = sig15(pure.value);
  }
  emit(record("optimal", std::move(params), std::move(results)));
  return kExitOk;
}

// --- simulate -------------------------------------------------------------

struct SimulateArgs {
  int n = 2;
  double eta1 = 0.5;
  std::optional<double> omega1;
  std::optional<double> x;
  std::uint64_t shots = 100000;
  std::uint64_t seed = 1;
};

int cmd_simulate(const SimulateArgs& a) {
  require_open_prior(a.eta1);
  if (a.shots < 1) throw UsageError("--shots must be at least 1");
  double omega1 = 0.0;
  if (a.omega1 || a.x) {
    omega1 = resolve_omega1(a.omega1, a.x);
  } else {
    qd_regime_result best{};
    check(qd_optimal_average(a.n, a.eta1, &best));
    omega1 = best.omega1_star;
  }
  double x = 0.0;
  check(qd_x_from_omega1(omega1, &x));

  qd_discrimination_stats s{};
  check(qd_simulate_discriminator(a.n, omega1, a.eta1, a.shots, a.seed, &s));

  const char* outcome[] = {"D1", "D2", "F"};
  Record counts;
  for (int l = 0; l < 2; ++l) {
    Record row;
    for (int k = 0; k < 3; ++k) row[outcome[k]] = s.counts[l][k];
    counts[l == 0 ? "psi1" : "psi2"] = std::move(row);
  }
  const double z = s.sigma > 0.0 ? (s.empirical_success - s.analytic_success) / s.sigma : 0.0;
  Record results{{"counts", std::move(counts)},
                 {"successes", s.successes},
                 {"errors", s.errors},
                 {"empirical_success", sig15(s.empirical_success)},
                 {"analytic_success", sig15(s.analytic_success)},
                 {"sigma", sig15(s.sigma)},
                 {"z_score", sig15(z)},
                 {"within_5_sigma", std::abs(z) <= 5.0}};
  Record params{{"n", a.n}, {"eta1", sig15(a.eta1)}, {"omega1", sig15(omega1)}, {"x", sig15(x)},
                {"shots", a.shots}};
  emit(record("simulate", std::move(params), std::move(results), a.seed));
  return kExitOk;
}

// --- prepare --------------------------------------------------------------

struct PrepareArgs {
  std::string amplitudes;
  std::string out;
};

// One amplitude per line: "re" or "re im"; '#' starts a comment.
std::vector<double> read_amplitudes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::vector<double> data;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    if (!(ls >> re)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected a number");
    }
    if (!(ls >> im)) im = 0.0;
    std::string extra;
    if (ls >> extra) throw UsageError(path + ":" + std::to_string(line_no) + ": trailing text");
    data.push_back(re);
    data.push_back(im);
  }
  if (data.empty()) throw UsageError(path + ": no amplitudes");
  return data;
}

int cmd_prepare(const PrepareArgs& a) {
  const auto amps = read_amplitudes(a.amplitudes);
  const size_t n = amps.size() / 2;
  qd_interferometer* net = nullptr;
  check(qd_prepare_state_network(amps.data(), n, &net));
  std::string text;
  size_t layers = 0;
  double error = 0.0;
  try {
    text = serialize(net);
    check(qd_interferometer_num_layers(net, &layers));
    std::vector<double> u(2 * n * n);
    check(qd_interferometer_unitary(net, u.data(), u.size()));
    for (size_t r = 0; r < n; ++r)
      error = std::max(error, std::hypot(u[2 * (r * n)] - amps[2 * r], u[2 * (r * n) + 1] - amps[2 * r + 1]));
  } catch (...) {
    qd_interferometer_free(net);
    throw;
  }
  qd_interferometer_free(net);

  if (a.out.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(a.out);
  if (!(out << text)) throw UsageError("cannot write " + a.out);
  emit(record("prepare", {{"amplitudes", a.amplitudes}, {"out", a.out}},
              {{"modes", n}, {"layers", layers}, {"max_amplitude_error", sig15(error)}}));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Programmable unambiguous discriminator for two unknown qudit states"};
  app.set_version_flag("--version", std::string(qd_version()));
  app.require_subcommand(1);

  DimsArgs dims;
  auto* c_dims = app.add_subcommand("dims", "Subspace dimensions for qudit dimension n");
  c_dims->add_option("--n", dims.n, "Qudit dimension (>= 2)")->required();
  c_dims->add_option("--format", dims.format, "table or json")->check(CLI::IsMember({"table", "json"}));

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Run every invariant check for n = 2..n-max");
  c_verify->add_option("--n-max", verify.n_max, "Largest qudit dimension checked");
  c_verify->add_option("--tol", verify.tol, "Override the algebraic tolerances (default: QUDISC_TOL)");
  c_verify->add_flag("--json", verify.json, "Emit the report as JSON");

  ScanArgs scan;
  auto* c_scan = app.add_subcommand("scan", "Success probabilities on a uniform grid in x");
  c_scan->add_option("--n", scan.n, "Qudit dimension");
  c_scan->add_option("--eta1", scan.eta1, "Prior of the first state");
  c_scan->add_option("--steps", scan.steps, "Number of grid rows (1 gives the endpoints)");
  c_scan->add_option("--format", scan.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  OptimalArgs optimal;
  auto* c_opt = app.add_subcommand("optimal", "Optimal measurement angle and success probabilities");
  c_opt->add_option("--n", optimal.n, "Qudit dimension");
  c_opt->add_option("--eta1", optimal.eta1, "Prior of the first state");
  c_opt->add_option("--overlap-sq", optimal.overlap_sq, "|<psi1|psi2>|^2 for the pure-state optimum");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Sample the discriminator photon by photon");
  c_sim->add_option("--n", sim.n, "Qudit dimension");
  c_sim->add_option("--eta1", sim.eta1, "Prior of the first state");
  auto* o_omega = c_sim->add_option("--omega1", sim.omega1, "Measurement angle in radians");
  auto* o_x = c_sim->add_option("--x", sim.x, "x = 1 + 3 cos^2(omega1), in [1, 4]");
  o_omega->excludes(o_x);
  c_sim->add_option("--shots", sim.shots, "Number of photons");
  c_sim->add_option("--seed", sim.seed, "Random seed");

  PrepareArgs prep;
  auto* c_prep = app.add_subcommand("prepare", "Synthesize a network that prepares a single-photon state");
  c_prep->add_option("--amplitudes", prep.amplitudes, "File with one 're [im]' amplitude per line")->required();
  c_prep->add_option("--out", prep.out, "Interferometer file to write (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c_dims) return cmd_dims(dims);
    if (*c_verify) return cmd_verify(verify);
    if (*c_scan) return cmd_scan(scan);
    if (*c_opt) return cmd_optimal(optimal);
    if (*c_sim) return cmd_simulate(sim);
    if (*c_prep) return cmd_prepare(prep);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

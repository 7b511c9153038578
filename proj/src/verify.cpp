#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include <json.hpp>

#include "qudisc/harness.hpp"
#include "qudisc/optics.hpp"

namespace qudisc {

namespace {

constexpr double kTight = 1e-12;
constexpr double kOp = 1e-10;
constexpr std::uint64_t kSeed = 20240601;

class Collector {
public:
  explicit Collector(const VerifyOptions& options) : options_(options) {}

  /// Algebraic identity: passes when deviation <= tolerance (overridable).
  void algebraic(std::string group, std::string name, std::string claim, int n, double deviation, double tol) {
    if (options_.tolerance) tol = *options_.tolerance;
    push(std::move(group), std::move(name), std::move(claim), n, deviation, tol, deviation <= tol);
  }

  /// Exact or statistical check with a fixed threshold.
  void fixed(std::string group, std::string name, std::string claim, int n, double deviation, double tol,
             bool passed) {
    push(std::move(group), std::move(name), std::move(claim), n, deviation, tol, passed);
  }

  Report take(int n_max) { return Report{n_max, std::move(checks_)}; }

private:
  void push(std::string group, std::string name, std::string claim, int n, double deviation, double tol,
            bool passed) {
    if (!std::isfinite(deviation)) passed = false;
    checks_.push_back({std::move(group), std::move(name), std::move(claim), n, passed, deviation, tol});
  }

  VerifyOptions options_;
  std::vector<CheckResult> checks_;
};

std::vector<double> omega_grid(int points) {
  std::vector<double> out;
  for (int k = 0; k < points; ++k) out.push_back(std::numbers::pi / 2.0 * k / (points - 1));
  return out;
}

double scan_max(const Priors& priors, double step) {
  double best = -1.0;
  const auto count = static_cast<long>(std::llround(3.0 / step));
  for (long k = 0; k <= count; ++k) best = std::max(best, success_curve_x(1.0 + 3.0 * k / count, priors));
  return best;
}

void check_spaces(Collector& out, int n) {
  const DimensionTable formula = dimension_table(n);
  const DimensionTable built = constructive_dimensions(n);
  const long fields_f[] = {formula.dim_sigma, formula.dim_s0, formula.dim_s1, formula.dim_s2, formula.dim_s3,
                           formula.dim_s4, formula.dim_s5, formula.dim_s6, formula.i0};
  const long fields_b[] = {built.dim_sigma, built.dim_s0, built.dim_s1, built.dim_s2, built.dim_s3,
                           built.dim_s4, built.dim_s5, built.dim_s6, built.i0};
  double worst = 0.0;
  for (std::size_t k = 0; k < std::size(fields_f); ++k)
    worst = std::max(worst, static_cast<double>(std::labs(fields_f[k] - fields_b[k])));
  char claim[160];
  std::snprintf(claim, sizeof claim, "ranks match formulas: Sigma=%ld S0=%ld S1=S2=%ld S3=%ld S4=S5=%ld S6=%ld i0=%ld",
                formula.dim_sigma, formula.dim_s0, formula.dim_s1, formula.dim_s3, formula.dim_s4, formula.dim_s6,
                formula.i0);
  out.fixed("spaces", "dimension_formulas", claim, n, worst, 0.0, worst == 0.0);

  const CMatrix b2 = column_stack(symmetric_basis_2(n));
  const CMatrix b3 = column_stack(symmetric_basis_3(n));
  out.algebraic("spaces", "symmetric_bases_orthonormal", "Gram of u2 and u3 bases = I", n,
                std::max(orthonormality_defect(b2), orthonormality_defect(b3)), kTight);

  double perm_dev = 0.0;
  for (const auto& p : register_permutations(n)) perm_dev = std::max(perm_dev, max_abs(p * b3 - b3));
  out.algebraic("spaces", "u3_permutation_invariant", "u3 vectors fixed by all six register permutations", n,
                perm_dev, kTight);

  const CMatrix p_sym = symmetric_projector(n).entries;
  const CMatrix swap = swap_operator(n).entries;
  const CMatrix id2 = CMatrix::Identity(p_sym.rows(), p_sym.cols());
  out.algebraic("spaces", "symmetric_projector", "P_sym idempotent, = (I + SWAP)/2, commutes with SWAP", n,
                std::max({max_abs(p_sym * p_sym - p_sym), max_abs(p_sym - 0.5 * (id2 + swap)),
                          max_abs(p_sym * swap - swap * p_sym)}),
                kOp);

  const DensityPair rho = mean_density_operators(n);
  double rho_dev = 0.0;
  for (const auto* r : {&rho.rho1, &rho.rho2})
    rho_dev = std::max({rho_dev, std::abs(r->entries.trace() - Complex(1.0)),
                        std::max(0.0, -min_eigenvalue(r->entries)), hermiticity_defect(r->entries)});
  out.algebraic("spaces", "density_operators", "rho1, rho2 Hermitian, PSD, unit trace", n, rho_dev, kTight);

  double exp_dev = 0.0;
  for (const auto& t : ordered_triples(n))
    for (Side side : {Side::S1, Side::S2})
      exp_dev = std::max(exp_dev, (expansion_vector(n, expand_u3(n, t, side), side) -
                                   symmetric_triple_vector(n, t))
                                      .cwiseAbs()
                                      .maxCoeff());
  out.algebraic("spaces", "u3_expansions", "u3 rebuilt from S1 and S2 product bases", n, exp_dev, kTight);
}

void check_jordan(Collector& out, int n, const JordanPairSet& set) {
  const CMatrix g = set.g_matrix();
  const CMatrix h = set.h_matrix();
  out.algebraic("jordan", "families_orthonormal", "g and h families orthonormal", n,
                std::max(orthonormality_defect(g), orthonormality_defect(h)), kTight);
  out.algebraic("jordan", "cross_gram", "<g_i|h_j> = -delta_ij/2", n, overlap_matrix(set).max_deviation, kTight);

  const CMatrix s0 = column_stack(symmetric_basis_3(n));
  out.algebraic("jordan", "orthogonal_to_s0", "g_i and h_i orthogonal to S0", n,
                std::max(max_abs(s0.adjoint() * g), max_abs(s0.adjoint() * h)), kTight);

  double block_dev = 0.0;
  const CMatrix gg = g.adjoint() * g;
  const CMatrix gh = g.adjoint() * h;
  const CMatrix hh = h.adjoint() * h;
  for (Eigen::Index i = 0; i < gg.rows(); ++i)
    for (Eigen::Index j = 0; j < gg.cols(); ++j)
      if (i != j)
        block_dev = std::max({block_dev, std::abs(gg(i, j)), std::abs(gh(i, j)), std::abs(hh(i, j))});
  out.algebraic("jordan", "blocks_orthogonal", "T_i = span(g_i, h_i) mutually orthogonal", n, block_dev, kTight);

  const auto angles = jordan_angles(g, h);
  double cos_dev = std::abs(static_cast<double>(angles.cosines.size()) - static_cast<double>(set.size()));
  for (double c : angles.cosines) cos_dev = std::max(cos_dev, std::abs(c - 0.5));
  out.algebraic("jordan", "jordan_cosines", "all principal-angle cosines between S4 and S5 equal 1/2", n, cos_dev,
                kTight);

  const CMatrix p_s0 = s0 * s0.adjoint();
  const CMatrix p_sym = symmetric_projector(n).entries;
  const CMatrix id = CMatrix::Identity(n, n);
  out.algebraic("jordan", "spans_complement", "P_S0 + sum g g^+ = P_S1 and P_S0 + sum h h^+ = P_S2", n,
                std::max(max_abs(p_s0 + g * g.adjoint() - kron(p_sym, id)),
                         max_abs(p_s0 + h * h.adjoint() - kron(id, p_sym))),
                kOp);

  const DensityPair direct = mean_density_operators(n);
  const DensityPair jordan = density_from_jordan(n);
  out.algebraic("jordan", "density_jordan_form", "rho rebuilt from Jordan form equals averaged rho", n,
                std::max(max_abs(direct.rho1.entries - jordan.rho1.entries),
                         max_abs(direct.rho2.entries - jordan.rho2.entries)),
                kTight);
}

void check_povm(Collector& out, int n, const JordanPairSet& set) {
  const DensityPair rho = mean_density_operators(n);
  const Priors half = Priors::from_eta1(0.5);
  double psd_dev = 0.0;
  double unamb = 0.0;
  double closed_dev = 0.0;
  std::vector<MeasurementTriple> grid_povms;
  const auto grid = omega_grid(50);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double w = grid[k];
    MeasurementTriple m = total_povm(set, w);
    for (const auto* op : {&m.pi1, &m.pi2, &m.pi0}) psd_dev = std::max(psd_dev, -min_eigenvalue(op->entries));
    psd_dev = std::max(psd_dev, max_abs(m.pi1.entries + m.pi2.entries + m.pi0.entries - m.identity.entries));
    unamb = std::max({unamb, std::abs((m.pi1.entries * rho.rho2.entries).trace()),
                      std::abs((m.pi2.entries * rho.rho1.entries).trace())});
    for (double eta1 : {0.1, 0.5, 0.9}) {
      const Priors pr = Priors::from_eta1(eta1);
      const double by_trace = pr.eta1() * (m.pi1.entries * rho.rho1.entries).trace().real() +
                              pr.eta2() * (m.pi2.entries * rho.rho2.entries).trace().real();
      closed_dev = std::max(closed_dev, std::abs(average_success(n, w, pr) - by_trace));
    }
    if (k % 5 == 0) grid_povms.push_back(std::move(m));
  }
  out.algebraic("povm", "povm_valid", "Pi1, Pi2, Pi0 PSD and complete on a 50-point omega1 grid", n, std::max(psd_dev, 0.0),
                kOp);
  out.algebraic("povm", "unambiguous_mixed", "Tr(Pi1 rho2) = Tr(Pi2 rho1) = 0", n, unamb, kTight);
  out.algebraic("povm", "average_closed_form", "closed-form averaged success = trace formula", n, closed_dev, kOp);

  double pure_unamb = 0.0;
  double pure_dev = 0.0;
  double identity_dev = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto [psi1, psi2] = haar_pair(n, kSeed + static_cast<std::uint64_t>(n), t);
    const CVector in1 = program_input(psi1, psi2, 1).amplitudes();
    const CVector in2 = program_input(psi1, psi2, 2).amplitudes();
    const auto& m = grid_povms[t % grid_povms.size()];
    pure_unamb = std::max({pure_unamb, (m.pi1.entries * in2).norm(), (m.pi2.entries * in1).norm()});
    pure_dev = std::max(pure_dev, std::abs(pure_success(psi1, psi2, m.omega1, half, n) -
                                           pure_success_by_expectation(m, psi1, psi2, half)));
    const auto id = overlap_identity_check(set, psi1, psi2);
    identity_dev = std::max({identity_dev, std::abs(id.g_side - id.rhs), std::abs(id.h_side - id.rhs)});
  }
  out.algebraic("povm", "unambiguous_pure", "Pi1 Psi2 = Pi2 Psi1 = 0 for 100 Haar pairs", n, pure_unamb, kOp);
  out.algebraic("povm", "pure_closed_form", "closed-form pure success = expectation values, 100 Haar pairs", n,
                pure_dev, kOp);
  out.algebraic("povm", "overlap_identity", "sum |<Psi1|g_perp>|^2 = sum |<Psi2|h_perp>|^2 = (1-|<psi1|psi2>|^2)/2",
                n, identity_dev, kOp);
}

void check_dimension_independence(Collector& out, int n_max) {
  // Operator route: the expectation values of the n-dependent POVM, divided
  // by 1 - |<psi1|psi2>|^2, must not depend on n.
  constexpr int points = 10;
  std::vector<double> reference(points, NAN);
  double dev = 0.0;
  for (int n = 2; n <= n_max; ++n) {
    const JordanPairSet set = build_gh_bases(n);
    for (int t = 0; t < points; ++t) {
      const auto pr = Priors::from_eta1(0.05 + 0.1 * t);
      const double w = std::numbers::pi / 2.0 * t / (points - 1);
      const auto povm = total_povm(set, w);
      const auto [psi1, psi2] = haar_pair(n, kSeed + 77, static_cast<std::uint64_t>(t));
      const double overlap_sq = std::norm(psi1.amplitudes().dot(psi2.amplitudes()));
      const double normalized = pure_success_by_expectation(povm, psi1, psi2, pr) / (1.0 - overlap_sq);
      if (n == 2) reference[static_cast<std::size_t>(t)] = normalized;
      dev = std::max(dev, std::abs(normalized - reference[static_cast<std::size_t>(t)]));
    }
  }
  out.algebraic("povm", "dimension_independence", "pure success / (1 - overlap^2) identical for n = 2..n_max", 0, dev,
                kOp);
}

void check_regimes(Collector& out) {
  double scan_dev = 0.0;
  double printed_gap = INFINITY;
  for (int k = 1; k <= 99; ++k) {
    const Priors pr = Priors::from_eta1(k / 100.0);
    const double best = scan_max(pr, 1e-6);
    scan_dev = std::max(scan_dev, std::abs(optimal_subspace(pr).value - best));
    if (optimal_subspace(pr).regime == Regime::Middle)
      printed_gap = std::min(printed_gap, std::abs(1.0 - 2.0 * std::sqrt(pr.eta1() * pr.eta2()) - best));
  }
  out.fixed("regimes", "optimum_vs_scan", "closed-form optimum = max of 1e-6 grid scan in x, 99 priors", 0, scan_dev,
            1e-6, scan_dev <= 1e-6);
  out.fixed("regimes", "printed_middle_rejected", "1 - 2 sqrt(eta1 eta2) misses the scan maximum for every middle prior",
            0, printed_gap, 1e-6, printed_gap > 1e-6);

  double cont = 0.0;
  for (double e1 : {0.2, 0.8}) {
    const double e2 = 1.0 - e1;
    const double middle = 1.0 - std::sqrt(e1 * e2);
    const double edge = e1 < 0.5 ? 0.75 * e2 : 0.75 * e1;
    cont = std::max(cont, std::abs(middle - edge));
  }
  out.algebraic("regimes", "continuity", "regime formulas agree at eta1 = 1/5 and 4/5", 0, cont, kTight);
}

void check_optics(Collector& out, int n_max) {
  double born_dev = 0.0;
  const JordanPairSet set = build_gh_bases(2);
  for (double w : omega_grid(20)) {
    const auto born = discriminator_probabilities(w);
    const auto m = subspace_povm(set.g[0], set.h[0], w);
    const CVector& g = set.g[0].amplitudes();
    const CVector& h = set.h[0].amplitudes();
    auto expect = [](const Operator& op, const CVector& v) { return v.dot(op.entries * v).real(); };
    born_dev = std::max({born_dev, std::abs(born.given_g[kModeD1] - expect(m.pi1, g)),
                         std::abs(born.given_g[kModeD2] - expect(m.pi2, g)),
                         std::abs(born.given_g[kModeFail] - expect(m.pi0, g)),
                         std::abs(born.given_h[kModeD1] - expect(m.pi1, h)),
                         std::abs(born.given_h[kModeD2] - expect(m.pi2, h)),
                         std::abs(born.given_h[kModeFail] - expect(m.pi0, h))});
  }
  out.algebraic("optics", "discriminator_born", "network click probabilities = POVM expectations, 20-point grid", 0,
                born_dev, kTight);

  double reck_dev = 0.0;
  std::mt19937_64 gen(kSeed);
  std::normal_distribution<double> normal;
  for (int dim = 2; dim <= std::max(8, n_max); ++dim) {
    CMatrix z(dim, dim);
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = Complex(normal(gen), normal(gen));
    const CMatrix u = Eigen::HouseholderQR<CMatrix>(z).householderQ();
    reck_dev = std::max(reck_dev, max_abs(reck_decompose(u).unitary() - u));
  }
  out.algebraic("optics", "reck_round_trip", "mesh synthesis reproduces random unitaries, N = 2..8", 0, reck_dev, kOp);
}

void check_monte_carlo(Collector& out, int n_max) {
  const Priors half = Priors::from_eta1(0.5);
  const double w = std::acos(std::sqrt(1.0 / 3.0));
  for (int n = 2; n <= n_max; ++n) {
    const McEstimate est = mc_success(n, w, half, 4000, kSeed + static_cast<std::uint64_t>(n));
    const double z = std::abs(est.mean - average_success(n, w, half)) / est.std_error;
    out.fixed("harness", "mc_success", "Rao-Blackwellized MC mean within 3 stderr of averaged success", n, z, 3.0,
              z <= 3.0);
  }
}

}  // namespace

bool Report::passed() const { return failures() == 0 && !checks.empty(); }

std::size_t Report::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

std::string Report::to_text() const {
  std::string out;
  char buf[64];
  for (const auto& c : checks) {
    out += "[" + c.group + "." + c.name + (c.n ? " n=" + std::to_string(c.n) : std::string()) + "]\n";
    out += "status: " + std::string(c.passed ? "pass" : "FAIL") + "\n";
    std::snprintf(buf, sizeof buf, "%.15g", c.deviation);
    out += "deviation: " + std::string(buf) + "\n";
    std::snprintf(buf, sizeof buf, "%.15g", c.tolerance);
    out += "tolerance: " + std::string(buf) + "\n";
    out += "claim: " + c.claim + "\n\n";
  }
  out += "summary: " + std::to_string(checks.size() - failures()) + "/" + std::to_string(checks.size()) +
         " checks passed\n";
  out += "result: " + std::string(passed() ? "pass" : "FAIL") + "\n";
  return out;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["n_max"] = n_max;
  j["passed"] = passed();
  j["failures"] = failures();
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json item;
    item["group"] = c.group;
    item["name"] = c.name;
    if (c.n) item["n"] = c.n;
    item["passed"] = c.passed;
    item["deviation"] = std::isfinite(c.deviation) ? nlohmann::ordered_json(c.deviation) : nlohmann::ordered_json(nullptr);
    item["tolerance"] = c.tolerance;
    item["claim"] = c.claim;
    arr.push_back(std::move(item));
  }
  return j.dump(2);
}

Report verify_all(int n_max, const VerifyOptions& options) {
  if (n_max < 2) throw DomainError("verify_all: n_max must be >= 2, got " + std::to_string(n_max));
  if (options.tolerance && !(*options.tolerance >= 0.0)) throw DomainError("verify_all: tolerance must be >= 0");
  Collector out(options);
  for (int n = 2; n <= n_max; ++n) {
    const JordanPairSet set = build_gh_bases(n);
    check_spaces(out, n);
    check_jordan(out, n, set);
    check_povm(out, n, set);
  }
  check_dimension_independence(out, n_max);
  check_regimes(out);
  check_optics(out, n_max);
  check_monte_carlo(out, n_max);
  return out.take(n_max);
}

}  // namespace qudisc

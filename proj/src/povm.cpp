#include "qudisc/povm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qudisc {

namespace {

constexpr double kSlack = 1e-12;
constexpr double kLowThreshold = 0.2;
constexpr double kHighThreshold = 0.8;

void require_nondegenerate(const Priors& priors) {
  if (priors.degenerate())
    throw DegeneratePriorError("priors with eta1 in {0, 1} make discrimination trivial; no optimum exists");
}

double cos_sq(double omega1) {
  const double c = std::cos(omega1);
  return c * c;
}

double sin_sq(double omega1) {
  const double s = std::sin(omega1);
  return s * s;
}

CMatrix dyad(const CVector& v) { return v * v.adjoint(); }

}  // namespace

Priors::Priors(double eta1, double eta2) : eta1_(eta1), eta2_(eta2) {
  if (!(eta1 >= 0.0) || !(eta2 >= 0.0)) throw DomainError("priors must be non-negative");
  if (std::abs(eta1 + eta2 - 1.0) > 1e-12) throw DomainError("priors must sum to 1");
}

Priors Priors::from_eta1(double eta1) {
  if (!(eta1 >= 0.0 && eta1 <= 1.0)) throw DomainError("eta1 must lie in [0, 1]");
  return Priors(eta1, 1.0 - eta1);
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::Low: return "low";
    case Regime::Middle: return "middle";
    case Regime::High: return "high";
  }
  return "?";
}

double checked_probability(double p, const char* what) {
  if (!(p >= -kSlack && p <= 1.0 + kSlack))
    throw DomainError(std::string(what) + " outside [0, 1]: " + std::to_string(p));
  return std::clamp(p, 0.0, 1.0);
}

double checked_omega1(double omega1) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(omega1 >= -kSlack && omega1 <= half_pi + kSlack))
    throw DomainError("omega1 must lie in [0, pi/2], got " + std::to_string(omega1));
  return std::clamp(omega1, 0.0, half_pi);
}

ReciprocalPair reciprocal_pair(const StateVector& g, const StateVector& h) {
  if (!(g.space() == h.space())) throw ContractError("reciprocal_pair: g and h live in different spaces");
  const Complex overlap = g.amplitudes().dot(h.amplitudes());  // <g|h>
  if (std::abs(overlap - Complex(-0.5, 0.0)) > 1e-6)
    throw ContractError("reciprocal_pair: requires <g|h> = -1/2, got (" + std::to_string(overlap.real()) + ", " +
                        std::to_string(overlap.imag()) + ")");
  const double two = 2.0 / std::sqrt(3.0);
  const double one = 1.0 / std::sqrt(3.0);
  // Renormalize to absorb the residual of the overlap precondition.
  CVector gp = two * g.amplitudes() + one * h.amplitudes();
  CVector hp = two * h.amplitudes() + one * g.amplitudes();
  gp.normalize();
  hp.normalize();
  return {StateVector(g.space(), std::move(gp)), StateVector(h.space(), std::move(hp))};
}

MeasurementTriple subspace_povm(const StateVector& g, const StateVector& h, double omega1) {
  omega1 = checked_omega1(omega1);
  const auto [g_perp, h_perp] = reciprocal_pair(g, h);
  const double w1 = sin_sq(omega1);
  const double w2 = 4.0 * cos_sq(omega1) / x_from_omega1(omega1);

  const SpaceSpec space = g.space();
  // g_perp and h are orthonormal and span T.
  const CMatrix p_t = dyad(g_perp.amplitudes()) + dyad(h.amplitudes());
  Operator pi1{space, w1 * dyad(g_perp.amplitudes())};
  Operator pi2{space, w2 * dyad(h_perp.amplitudes())};
  Operator pi0{space, p_t - pi1.entries - pi2.entries};
  return {std::move(pi1), std::move(pi2), std::move(pi0), Operator{space, p_t}, omega1};
}

MeasurementTriple total_povm(const JordanPairSet& set, double omega1) {
  omega1 = checked_omega1(omega1);
  const int n = set.n;
  require_dimension(n, "total_povm");
  const SpaceSpec space{n, 3};
  const Eigen::Index dim = static_cast<Eigen::Index>(space.dim());
  CMatrix sum_g = CMatrix::Zero(dim, dim);
  CMatrix sum_h = CMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto pair = reciprocal_pair(set.g[i], set.h[i]);
    sum_g += dyad(pair.g_perp.amplitudes());
    sum_h += dyad(pair.h_perp.amplitudes());
  }
  const CMatrix id = CMatrix::Identity(dim, dim);
  Operator pi1{space, sin_sq(omega1) * sum_g};
  Operator pi2{space, (4.0 * cos_sq(omega1) / x_from_omega1(omega1)) * sum_h};
  Operator pi0{space, id - pi1.entries - pi2.entries};
  return {std::move(pi1), std::move(pi2), std::move(pi0), Operator{space, id}, omega1};
}

MeasurementTriple total_povm(int n, double omega1) {
  require_dimension(n, "total_povm");
  return total_povm(build_gh_bases(n), omega1);
}

double x_from_omega1(double omega1) { return 1.0 + 3.0 * cos_sq(omega1); }

double omega1_from_x(double x) {
  if (!(x >= 1.0 - kSlack && x <= 4.0 + kSlack)) throw DomainError("x must lie in [1, 4], got " + std::to_string(x));
  const double c = std::sqrt(std::clamp((x - 1.0) / 3.0, 0.0, 1.0));
  return std::acos(c);
}

double success_curve_x(double x, const Priors& priors) {
  if (!(x >= 1.0 - kSlack && x <= 4.0 + kSlack)) throw DomainError("x must lie in [1, 4], got " + std::to_string(x));
  x = std::clamp(x, 1.0, 4.0);
  return checked_probability(1.0 - priors.eta1() * x / 4.0 - priors.eta2() / x, "subspace success");
}

RegimeResult optimal_subspace(const Priors& priors) {
  require_nondegenerate(priors);
  const double e1 = priors.eta1();
  const double e2 = priors.eta2();
  RegimeResult r{};
  if (e1 < kLowThreshold) {
    r.regime = Regime::Low;
    r.x_star = 4.0;
    r.value = 0.75 * e2;
  } else if (e1 > kHighThreshold) {
    r.regime = Regime::High;
    r.x_star = 1.0;
    r.value = 0.75 * e1;
  } else {
    r.regime = Regime::Middle;
    r.x_star = std::clamp(2.0 * std::sqrt(e2 / e1), 1.0, 4.0);
    r.value = 1.0 - std::sqrt(e1 * e2);
  }
  r.value = checked_probability(r.value, "optimal subspace success");
  r.omega1_star = omega1_from_x(r.x_star);
  return r;
}

double average_success(int n, double omega1, const Priors& priors) {
  require_dimension(n, "average_success");
  omega1 = checked_omega1(omega1);
  const double nn = n;
  const double c2 = cos_sq(omega1);
  const double value = (nn - 1.0) * priors.eta1() / (2.0 * nn) * sin_sq(omega1) +
                       2.0 * (nn - 1.0) * priors.eta2() * c2 / (nn * (1.0 + 3.0 * c2));
  return checked_probability(value, "average success");
}

double average_success_by_trace(int n, double omega1, const Priors& priors) {
  const auto povm = total_povm(n, omega1);
  const auto rho = mean_density_operators(n);
  const double value = priors.eta1() * (povm.pi1.entries * rho.rho1.entries).trace().real() +
                       priors.eta2() * (povm.pi2.entries * rho.rho2.entries).trace().real();
  return checked_probability(value, "average success (trace)");
}

RegimeResult optimal_average(int n, const Priors& priors) {
  require_dimension(n, "optimal_average");
  RegimeResult r = optimal_subspace(priors);
  const double nn = n;
  switch (r.regime) {
    case Regime::Low: r.value = (nn - 1.0) / (2.0 * nn) * priors.eta2(); break;
    case Regime::High: r.value = (nn - 1.0) / (2.0 * nn) * priors.eta1(); break;
    case Regime::Middle:
      r.value = 2.0 * (nn - 1.0) / (3.0 * nn) * (1.0 - std::sqrt(priors.eta1() * priors.eta2()));
      break;
  }
  r.value = checked_probability(r.value, "optimal average success");
  return r;
}

StateVector program_input(const StateVector& psi1, const StateVector& psi2, int which) {
  if (psi1.space().factors != 1 || !(psi1.space() == psi2.space()))
    throw ContractError("program_input: expects two single-qudit states of equal dimension");
  const CVector& a = psi1.amplitudes();
  const CVector& b = psi2.amplitudes();
  const SpaceSpec space{psi1.space().n, 3};
  if (which == 1) return StateVector(space, kron(kron(a, a), b));
  if (which == 2) return StateVector(space, kron(kron(a, b), b));
  throw DomainError("program_input: which must be 1 or 2");
}

double pure_success(const StateVector& psi1, const StateVector& psi2, double omega1, const Priors& priors, int n) {
  require_dimension(n, "pure_success");
  for (const auto* psi : {&psi1, &psi2})
    if (psi->space().factors != 1 || psi->space().n != n)
      throw ContractError("pure_success: states must be single qudits of dimension " + std::to_string(n));
  omega1 = checked_omega1(omega1);
  const double overlap_sq = std::norm(psi1.amplitudes().dot(psi2.amplitudes()));
  const double c2 = cos_sq(omega1);
  const double value = (0.5 * priors.eta1() * sin_sq(omega1) + 2.0 * priors.eta2() * c2 / (1.0 + 3.0 * c2)) *
                       (1.0 - std::min(overlap_sq, 1.0));
  return checked_probability(value, "pure success");
}

double pure_success_by_expectation(const MeasurementTriple& povm, const StateVector& psi1, const StateVector& psi2,
                                   const Priors& priors) {
  const CVector in1 = program_input(psi1, psi2, 1).amplitudes();
  const CVector in2 = program_input(psi1, psi2, 2).amplitudes();
  if (in1.size() != povm.pi1.entries.rows()) throw ContractError("pure_success_by_expectation: dimension mismatch");
  const double value = priors.eta1() * in1.dot(povm.pi1.entries * in1).real() +
                       priors.eta2() * in2.dot(povm.pi2.entries * in2).real();
  return checked_probability(value, "pure success (expectation)");
}

RegimeResult optimal_pure(double overlap_sq, const Priors& priors) {
  if (!(overlap_sq >= 0.0 && overlap_sq <= 1.0)) throw DomainError("overlap_sq must lie in [0, 1]");
  RegimeResult r = optimal_subspace(priors);
  const double distinguishable = 1.0 - overlap_sq;
  switch (r.regime) {
    case Regime::Low: r.value = 0.5 * priors.eta2() * distinguishable; break;
    case Regime::High: r.value = 0.5 * priors.eta1() * distinguishable; break;
    case Regime::Middle:
      r.value = 2.0 / 3.0 * (1.0 - std::sqrt(priors.eta1() * priors.eta2())) * distinguishable;
      break;
  }
  r.value = checked_probability(r.value, "optimal pure success");
  return r;
}

double omega2_constraint(double omega1) {
  omega1 = checked_omega1(omega1);
  return std::acos(std::clamp(1.0 / std::sqrt(x_from_omega1(omega1)), 0.0, 1.0));
}

}  // namespace qudisc

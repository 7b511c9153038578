#pragma once

// Haar sampling, Monte Carlo estimators and the one-shot verification report.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qudisc/jordan.hpp"
#include "qudisc/linalg.hpp"
#include "qudisc/povm.hpp"

namespace qudisc {

/// Normalized vector of n i.i.d. standard complex Gaussians; deterministic in seed.
StateVector haar_state(int n, std::uint64_t seed);

/// The (psi1, psi2) pair used by trial `trial` of a seeded run.
std::pair<StateVector, StateVector> haar_pair(int n, std::uint64_t seed, std::uint64_t trial);

/// Average of |Psi_which><Psi_which| over `trials` Haar pairs.
Operator empirical_mean_density(int n, int which, std::uint64_t trials, std::uint64_t seed);

struct OverlapIdentity {
  double g_side;  // sum_i |<Psi1|g_perp_i>|^2
  double h_side;  // sum_i |<Psi2|h_perp_i>|^2
  double rhs;     // (1 - |<psi1|psi2>|^2) / 2
};

OverlapIdentity overlap_identity_check(const StateVector& psi1, const StateVector& psi2, int n);
OverlapIdentity overlap_identity_check(const JordanPairSet& set, const StateVector& psi1, const StateVector& psi2);

struct McEstimate {
  double mean;
  double std_error;  // sample standard deviation / sqrt(trials)
  std::uint64_t trials;
  std::uint64_t seed;
};

/// Rao-Blackwellized estimate of the averaged success: every trial contributes
/// the exact success probability of its Haar pair.
McEstimate mc_success(int n, double omega1, const Priors& priors, std::uint64_t trials, std::uint64_t seed);

/// Outcome counts of the full discriminator, sampled photon by photon.
struct DiscriminationStats {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  // counts[label - 1][outcome], outcome order D1, D2, F.
  std::array<std::array<std::uint64_t, 3>, 2> counts{};
  std::uint64_t successes = 0;
  std::uint64_t errors = 0;
  double empirical_success = 0.0;
  double analytic_success = 0.0;
  double sigma = 0.0;  // binomial standard deviation of the empirical success
};

/// Each shot draws the data label from the priors, lands in a two-dimensional
/// Jordan block with probability 2(n-1)/(3n) (otherwise the symmetric part
/// forces F) and then passes through the discriminator network.
DiscriminationStats simulate_discriminator(int n, double omega1, const Priors& priors, std::uint64_t shots,
                                           std::uint64_t seed);

struct CheckResult {
  std::string group;
  std::string name;
  std::string claim;
  int n = 0;  // 0 for checks that are not tied to one dimension
  bool passed = false;
  double deviation = 0.0;
  double tolerance = 0.0;
};

struct Report {
  int n_max = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::size_t failures() const;
  /// `key: value` lines grouped by check.
  std::string to_text() const;
  std::string to_json() const;
};

struct VerifyOptions {
  /// Replaces every algebraic tolerance (statistical bounds and exact
  /// integer checks are unaffected).
  std::optional<double> tolerance;
};

Report verify_all(int n_max, const VerifyOptions& options = {});

}  // namespace qudisc

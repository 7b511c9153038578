#include "qudisc/harness.hpp"

#include <cmath>
#include <random>

#include "parallel.hpp"
#include "qudisc/optics.hpp"
#include "qudisc/random.hpp"

namespace qudisc {

StateVector haar_state(int n, std::uint64_t seed) {
  if (n < 1) throw DomainError("haar_state: n must be >= 1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(n);
  for (int k = 0; k < n; ++k) {
    const double re = normal(gen);
    const double im = normal(gen);
    v(k) = Complex(re, im);
  }
  v.normalize();
  return StateVector(SpaceSpec{n, 1}, std::move(v));
}

std::pair<StateVector, StateVector> haar_pair(int n, std::uint64_t seed, std::uint64_t trial) {
  return {haar_state(n, substream_seed(seed, 2 * trial)), haar_state(n, substream_seed(seed, 2 * trial + 1))};
}

Operator empirical_mean_density(int n, int which, std::uint64_t trials, std::uint64_t seed) {
  require_dimension(n, "empirical_mean_density");
  if (which != 1 && which != 2) throw DomainError("empirical_mean_density: which must be 1 or 2");
  if (trials < 1) throw DomainError("empirical_mean_density: trials must be >= 1");
  const Eigen::Index dim = static_cast<Eigen::Index>(n) * n * n;
  constexpr std::size_t chunk = 512;
  const std::size_t chunks = static_cast<std::size_t>((trials + chunk - 1) / chunk);
  std::vector<CMatrix> partial(chunks, CMatrix::Zero(dim, dim));
  detail::for_each_chunk(static_cast<std::size_t>(trials), chunk, [&](std::size_t begin, std::size_t end, std::size_t c) {
    for (std::size_t t = begin; t < end; ++t) {
      const auto [psi1, psi2] = haar_pair(n, seed, t);
      const CVector in = program_input(psi1, psi2, which).amplitudes();
      partial[c].noalias() += in * in.adjoint();
    }
  });
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (const auto& p : partial) sum += p;
  return {SpaceSpec{n, 3}, sum / static_cast<double>(trials)};
}

OverlapIdentity overlap_identity_check(const JordanPairSet& set, const StateVector& psi1, const StateVector& psi2) {
  const CVector in1 = program_input(psi1, psi2, 1).amplitudes();
  const CVector in2 = program_input(psi1, psi2, 2).amplitudes();
  if (in1.size() != static_cast<Eigen::Index>(SpaceSpec{set.n, 3}.dim()))
    throw ContractError("overlap_identity_check: state dimension does not match the Jordan set");
  OverlapIdentity out{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto pair = reciprocal_pair(set.g[i], set.h[i]);
    out.g_side += std::norm(pair.g_perp.amplitudes().dot(in1));
    out.h_side += std::norm(pair.h_perp.amplitudes().dot(in2));
  }
  out.rhs = 0.5 * (1.0 - std::norm(psi1.amplitudes().dot(psi2.amplitudes())));
  return out;
}

OverlapIdentity overlap_identity_check(const StateVector& psi1, const StateVector& psi2, int n) {
  require_dimension(n, "overlap_identity_check");
  if (psi1.space() != SpaceSpec{n, 1} || psi2.space() != SpaceSpec{n, 1})
    throw ContractError("overlap_identity_check: states must be single qudits of dimension " + std::to_string(n));
  return overlap_identity_check(build_gh_bases(n), psi1, psi2);
}

McEstimate mc_success(int n, double omega1, const Priors& priors, std::uint64_t trials, std::uint64_t seed) {
  require_dimension(n, "mc_success");
  omega1 = checked_omega1(omega1);
  if (trials < 100) throw DomainError("mc_success: needs at least 100 trials");
  std::vector<double> values(static_cast<std::size_t>(trials));
  detail::for_each_chunk(values.size(), 1024, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t t = begin; t < end; ++t) {
      const auto [psi1, psi2] = haar_pair(n, seed, t);
      values[t] = pure_success(psi1, psi2, omega1, priors, n);
    }
  });
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(trials - 1));
  return {mean, sd / std::sqrt(static_cast<double>(trials)), trials, seed};
}

DiscriminationStats simulate_discriminator(int n, double omega1, const Priors& priors, std::uint64_t shots,
                                           std::uint64_t seed) {
  require_dimension(n, "simulate_discriminator");
  omega1 = checked_omega1(omega1);
  if (shots < 1) throw DomainError("simulate_discriminator: shots must be >= 1");
  const ClickProbabilities born = discriminator_probabilities(omega1);
  const std::vector<double> given_g(born.given_g.begin(), born.given_g.end());
  const std::vector<double> given_h(born.given_h.begin(), born.given_h.end());
  const double in_block = 2.0 * (n - 1.0) / (3.0 * n);

  using Counts = std::array<std::array<std::uint64_t, 3>, 2>;
  constexpr std::size_t chunk = 4096;
  std::vector<Counts> partial(static_cast<std::size_t>((shots + chunk - 1) / chunk), Counts{});
  detail::for_each_chunk(static_cast<std::size_t>(shots), chunk, [&](std::size_t begin, std::size_t end, std::size_t c) {
    for (std::size_t s = begin; s < end; ++s) {
      const std::uint64_t stream = substream_seed(seed, s);
      const int label = counter_uniform(stream, 0) < priors.eta1() ? 0 : 1;
      std::size_t outcome = kModeFail;
      if (counter_uniform(stream, 1) < in_block)
        outcome = sample_index(label == 0 ? given_g : given_h, counter_uniform(stream, 2));
      ++partial[c][static_cast<std::size_t>(label)][outcome];
    }
  });

  DiscriminationStats stats;
  stats.shots = shots;
  stats.seed = seed;
  for (const auto& p : partial)
    for (std::size_t l = 0; l < 2; ++l)
      for (std::size_t k = 0; k < 3; ++k) stats.counts[l][k] += p[l][k];
  stats.successes = stats.counts[0][kModeD1] + stats.counts[1][kModeD2];
  stats.errors = stats.counts[0][kModeD2] + stats.counts[1][kModeD1];
  stats.empirical_success = static_cast<double>(stats.successes) / static_cast<double>(shots);
  stats.analytic_success = average_success(n, omega1, priors);
  stats.sigma = std::sqrt(stats.analytic_success * (1.0 - stats.analytic_success) / static_cast<double>(shots));
  return stats;
}

}  // namespace qudisc

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "qudisc/harness.hpp"
#include "qudisc/optics.hpp"
#include "qudisc/random.hpp"
#include "support.hpp"

using namespace qudisc;
using Catch::Matchers::WithinAbs;

namespace {

const double kThirdAngle = std::acos(std::sqrt(1.0 / 3.0));

StateVector single(const CVector& v) { return StateVector(SpaceSpec{static_cast<int>(v.size()), 1}, v); }

// Kolmogorov-Smirnov statistic of samples against a continuous CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double f = cdf(samples[k]);
    d = std::max({d, (k + 1) / m - f, f - k / m});
  }
  return d;
}

}  // namespace

TEST_CASE("counter-based streams", "[harness][random]") {
  CHECK(substream_seed(1, 0) != substream_seed(1, 1));
  CHECK(substream_seed(1, 0) != substream_seed(2, 0));
  CHECK(substream_seed(9, 4) == substream_seed(9, 4));
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const double u = counter_uniform(123, k);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("haar_state", "[harness]") {
  CHECK_THAT(std::abs(haar_state(1, 5).amplitudes()(0)), WithinAbs(1.0, 1e-15));
  const StateVector a = haar_state(3, 77);
  const StateVector b = haar_state(3, 77);
  CHECK(a.amplitudes() == b.amplitudes());
  CHECK(haar_state(3, 78).amplitudes() != a.amplitudes());
  CHECK_THROWS_AS(haar_state(0, 1), DomainError);

  SECTION("mean of |a1|^2 at n = 2") {
    const int samples = 100000;
    double sum = 0.0;
    for (int s = 0; s < samples; ++s) sum += std::norm(haar_state(2, substream_seed(31, s)).amplitudes()(0));
    // |a1|^2 is uniform on [0, 1] for n = 2: variance 1/12.
    const double sigma = std::sqrt(1.0 / 12.0 / samples);
    CHECK(std::abs(sum / samples - 0.5) < 5.0 * sigma);
  }

  SECTION("KS test of |a1|^2 against Beta(1, n - 1) at the 1e-3 level") {
    const int samples = 10000;
    // Asymptotic critical value sqrt(-ln(alpha / 2) / 2) / sqrt(m) at alpha = 1e-3.
    const double critical = std::sqrt(-std::log(0.5e-3) / 2.0) / std::sqrt(static_cast<double>(samples));
    for (int n = 2; n <= 5; ++n) {
      std::vector<double> values;
      for (int s = 0; s < samples; ++s) values.push_back(std::norm(haar_state(n, substream_seed(1000 + n, s)).amplitudes()(0)));
      const double d = ks_statistic(values, [n](double x) { return 1.0 - std::pow(1.0 - x, n - 1); });
      CHECK(d < critical);
    }
  }
}

TEST_CASE("haar_pair uses independent substreams", "[harness]") {
  const auto [p1, p2] = haar_pair(3, 5, 0);
  const auto [q1, q2] = haar_pair(3, 5, 1);
  CHECK(p1.amplitudes() != p2.amplitudes());
  CHECK(p1.amplitudes() != q1.amplitudes());
  const auto [r1, r2] = haar_pair(3, 5, 0);
  CHECK(r1.amplitudes() == p1.amplitudes());
  CHECK(r2.amplitudes() == p2.amplitudes());
}

TEST_CASE("empirical_mean_density", "[harness]") {
  SECTION("one trial is a pure state") {
    const Operator rho = empirical_mean_density(2, 1, 1, 3);
    CHECK_THAT(rho.entries.trace().real(), WithinAbs(1.0, 1e-12));
    CHECK(qtest::psd_rank(rho.entries) == 1);
  }
  SECTION("n = 2 converges to rho1") {
    const Operator rho = empirical_mean_density(2, 1, 20000, 8);
    CHECK(qtest::max_entry(rho.entries - mean_density_operators(2).rho1.entries) < 0.01);
  }
  SECTION("n = 3 converges to rho2 in trace distance") {
    const Operator rho = empirical_mean_density(3, 2, 20000, 9);
    const CMatrix diff = rho.entries - mean_density_operators(3).rho2.entries;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
    CHECK(0.5 * es.eigenvalues().cwiseAbs().sum() < 0.05);
  }
  SECTION("errors") {
    CHECK_THROWS_AS(empirical_mean_density(2, 3, 10, 1), DomainError);
    CHECK_THROWS_AS(empirical_mean_density(2, 1, 0, 1), DomainError);
  }
}

TEST_CASE("overlap identity", "[harness]") {
  const StateVector e1 = single(qtest::ket(2, {1}));
  const StateVector e2 = single(qtest::ket(2, {2}));
  const auto same = overlap_identity_check(e1, e1, 2);
  CHECK_THAT(same.g_side, WithinAbs(0.0, 1e-12));
  CHECK_THAT(same.h_side, WithinAbs(0.0, 1e-12));
  const auto orth = overlap_identity_check(e1, e2, 2);
  CHECK_THAT(orth.g_side, WithinAbs(0.5, 1e-12));
  CHECK_THAT(orth.h_side, WithinAbs(0.5, 1e-12));
  CHECK_THAT(orth.rhs, WithinAbs(0.5, 1e-12));

  for (int n = 2; n <= 4; ++n) {
    const JordanPairSet set = build_gh_bases(n);
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 100; ++t) {
      const auto [a, b] = haar_pair(n, 606, t);
      const auto r = overlap_identity_check(set, a, b);
      worst = std::max({worst, std::abs(r.g_side - r.rhs), std::abs(r.h_side - r.rhs)});
      // Right-hand side from the test's own inner product.
      CHECK_THAT(r.rhs, WithinAbs(0.5 * (1.0 - std::norm(a.amplitudes().dot(b.amplitudes()))), 1e-15));
    }
    CHECK(worst < 1e-10);
  }
  CHECK_THROWS_AS(overlap_identity_check(e1, e2, 3), ContractError);
}

TEST_CASE("mc_success", "[harness]") {
  const auto est = mc_success(2, kThirdAngle, Priors::from_eta1(0.5), 10000, 1);
  CHECK(std::abs(est.mean - 1.0 / 6.0) < 3.0 * est.std_error);
  CHECK(est.trials == 10000);
  CHECK(est.seed == 1);

  const auto zero = mc_success(3, 0.0, Priors::from_eta1(1.0), 500, 2);
  CHECK(zero.mean == 0.0);
  CHECK(zero.std_error == 0.0);

  const auto n5 = mc_success(5, kThirdAngle, Priors::from_eta1(0.5), 10000, 3);
  CHECK(std::abs(n5.mean - average_success(5, kThirdAngle, Priors::from_eta1(0.5))) < 3.0 * n5.std_error);

  CHECK_THROWS_AS(mc_success(2, 0.5, Priors::from_eta1(0.5), 99, 1), DomainError);

  // Same seed, same estimate regardless of worker scheduling.
  const auto again = mc_success(2, kThirdAngle, Priors::from_eta1(0.5), 10000, 1);
  CHECK(again.mean == est.mean);
  CHECK(again.std_error == est.std_error);
}

TEST_CASE("mc_success 3-sigma coverage over 20 seeds", "[harness][property]") {
  const Priors pr = Priors::from_eta1(0.35);
  const double target = average_success(3, 0.9, pr);
  int covered = 0;
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const auto est = mc_success(3, 0.9, pr, 2000, seed);
    if (std::abs(est.mean - target) <= 3.0 * est.std_error) ++covered;
  }
  CHECK(covered >= 18);
}

TEST_CASE("simulate_discriminator", "[harness]") {
  const auto s = simulate_discriminator(3, kThirdAngle, Priors::from_eta1(0.5), 100000, 42);
  CHECK(s.errors == 0);
  CHECK(s.counts[0][kModeD2] == 0);
  CHECK(s.counts[1][kModeD1] == 0);
  std::uint64_t total = 0;
  for (const auto& row : s.counts)
    for (auto c : row) total += c;
  CHECK(total == 100000);
  CHECK_THAT(s.analytic_success, WithinAbs(2.0 / 9.0, 1e-12));
  CHECK(std::abs(s.empirical_success - s.analytic_success) < 5.0 * s.sigma);

  const auto one = simulate_discriminator(2, 0.3, Priors::from_eta1(0.4), 1, 9);
  std::uint64_t one_total = 0;
  for (const auto& row : one.counts)
    for (auto c : row) one_total += c;
  CHECK(one_total == 1);

  const auto repeat = simulate_discriminator(3, kThirdAngle, Priors::from_eta1(0.5), 100000, 42);
  CHECK(repeat.counts == s.counts);
  CHECK_THROWS_AS(simulate_discriminator(3, 0.3, Priors::from_eta1(0.5), 0, 1), DomainError);
}

TEST_CASE("verify_all", "[harness]") {
  const Report r2 = verify_all(2);
  CHECK(r2.passed());
  CHECK_FALSE(r2.checks.empty());
  CHECK(r2.failures() == 0);

  const std::string text = r2.to_text();
  CHECK(text.find("result: pass") != std::string::npos);
  const auto json = nlohmann::json::parse(r2.to_json());
  CHECK(json["passed"] == true);
  CHECK(json["checks"].size() == r2.checks.size());

  const Report tight = verify_all(2, VerifyOptions{1e-30});
  CHECK_FALSE(tight.passed());

  CHECK_THROWS_AS(verify_all(1), DomainError);
}

TEST_CASE("verify_all at n_max = 4 includes the n = 3 dimension table", "[harness][slow]") {
  const Report r = verify_all(4);
  CHECK(r.passed());
  bool saw = false;
  for (const auto& c : r.checks)
    if (c.group == "spaces" && c.name == "dimension_formulas" && c.n == 3) {
      saw = true;
      CHECK(c.claim.find("S3=26") != std::string::npos);
    }
  CHECK(saw);
}

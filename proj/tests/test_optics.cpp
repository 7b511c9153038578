#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <numeric>

#include "qudisc/jordan.hpp"
#include "qudisc/optics.hpp"
#include "qudisc/povm.hpp"
#include "support.hpp"

using namespace qudisc;
using Catch::Matchers::WithinAbs;

namespace {

const double kPi = std::numbers::pi;
const double kThirdAngle = std::acos(std::sqrt(1.0 / 3.0));

StateVector mode_state(const CVector& v) { return StateVector(SpaceSpec{static_cast<int>(v.size()), 1}, v); }

CVector basis(int n, int k) {
  CVector v = CVector::Zero(n);
  v(k) = 1.0;
  return v;
}

double binomial_sigma(double p, std::uint64_t shots) { return std::sqrt(p * (1.0 - p) / static_cast<double>(shots)); }

}  // namespace

TEST_CASE("two_mode_unitary", "[optics]") {
  const Eigen::Matrix2cd flip = two_mode_unitary(kPi / 2.0, 0.0, 0.0);
  CHECK(std::abs(flip(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(flip(1, 1) + 1.0) < 1e-15);
  CHECK(std::abs(flip(0, 1)) < 1e-15);
  const Eigen::Matrix2cd swap = two_mode_unitary(0.0, 0.0, 0.0);
  CHECK(std::abs(swap(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(swap(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(swap(0, 0)) < 1e-15);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const double w = qtest::random_angle(seed) * 4.0;
    const double phi = qtest::random_angle(seed + 100) * 4.0;
    const double theta = qtest::random_angle(seed + 200) * 4.0;
    const Eigen::Matrix2cd u = two_mode_unitary(w, phi, theta);
    CHECK((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("beamsplitter", "[optics]") {
  const Eigen::Matrix2d bs = beamsplitter(kPi / 4.0);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) CHECK_THAT(std::abs(bs(r, c)), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
  CHECK((beamsplitter(kPi / 2.0) - Eigen::Vector2d(1.0, -1.0).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() <
        1e-15);
  for (double w : {0.0, 0.3, 1.0, 2.5}) {
    const Eigen::Matrix2d b = beamsplitter(w);
    CHECK(b(0, 1) == b(1, 0));
    CHECK_THAT(b.determinant(), WithinAbs(-1.0, 1e-15));
    CHECK((b.transpose() * b - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((two_mode_unitary(w, 0.0, 0.0) - b.cast<Complex>()).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("Interferometer composition and serialization", "[optics]") {
  Interferometer net(3);
  net.add_layer({0, 1, 0.4, 0.2, -0.3});
  net.add_layer({1, 2, 1.1, 0.0, 0.7});
  net.set_phase(2, 0.9);
  const CMatrix expected = embed_layer({1, 2, 1.1, 0.0, 0.7}, 3) * embed_layer({0, 1, 0.4, 0.2, -0.3}, 3) *
                           Eigen::Vector3cd(1.0, 1.0, std::polar(1.0, 0.9)).asDiagonal().toDenseMatrix();
  CHECK(qtest::max_entry(net.unitary() - expected) < 1e-15);
  CHECK(unitarity_defect(net.unitary()) < 1e-12);

  const std::string text = net.serialize();
  CHECK(text.rfind("BS 1 2 ", 0) == 0);
  const Interferometer back = Interferometer::parse(text);
  CHECK(back.num_modes() == 3);
  CHECK(back.layers().size() == 2);
  CHECK(qtest::max_entry(back.unitary() - net.unitary()) == 0.0);
  CHECK(back.serialize() == text);

  const Interferometer commented = Interferometer::parse("# two modes\nBS 1 2 0.5 0 0\n\nPHASE 2 0.25\n");
  CHECK(commented.num_modes() == 2);
  CHECK(commented.phases()[1] == 0.25);

  CHECK_THROWS_AS(Interferometer::parse("BS 1 1 0.5 0 0\n"), ContractError);
  CHECK_THROWS_AS(Interferometer::parse("BS 1 2 0.5\n"), ContractError);
  CHECK_THROWS_AS(Interferometer::parse("MIRROR 1\n"), ContractError);
  CHECK_THROWS_AS(Interferometer::parse(""), ContractError);
  CHECK_THROWS_AS(net.add_layer({0, 3, 0.1, 0, 0}), ContractError);
  CHECK_THROWS_AS(net.set_phase(-1, 0.1), ContractError);
  CHECK_THROWS_AS(Interferometer(0), DomainError);
}

TEST_CASE("discriminator network columns", "[optics]") {
  for (double w1 : {0.0, 0.3, kThirdAngle, 1.2, kPi / 2.0}) {
    const auto net = discriminator_network(w1);
    const double w2 = net.omega2;
    CHECK(w2 == -omega2_constraint(w1));
    const double s1 = std::sin(w1), c1 = std::cos(w1), s2 = std::sin(w2), c2 = std::cos(w2);
    const CMatrix& u = net.u3;
    CHECK(unitarity_defect(u) < 1e-12);
    CHECK(qtest::max_entry(u - net.network.unitary()) == 0.0);
    const Eigen::Vector3cd col_g(-s1, c1 * c2, c1 * s2);
    const Eigen::Vector3cd col_h(0.0, -s2, c2);
    CHECK((u.col(0) - col_g).norm() < 1e-12);
    CHECK((u.col(1) - col_h).norm() < 1e-12);
    CHECK(net.network.layers().size() == 2);
  }
}

TEST_CASE("discriminator click probabilities", "[optics]") {
  for (int k = 0; k < 20; ++k) {
    const double w = kPi / 2.0 * k / 19.0;
    const auto p = discriminator_probabilities(w);
    CHECK(p.given_h[kModeD1] < 1e-15);
    CHECK(p.given_g[kModeD2] < 1e-15);
    CHECK_THAT(std::accumulate(p.given_g.begin(), p.given_g.end(), 0.0), WithinAbs(1.0, 1e-12));
    CHECK_THAT(std::accumulate(p.given_h.begin(), p.given_h.end(), 0.0), WithinAbs(1.0, 1e-12));
  }
  const auto mid = discriminator_probabilities(kThirdAngle);
  CHECK_THAT(mid.given_g[kModeFail], WithinAbs(0.5, 1e-12));
  CHECK_THAT(mid.given_h[kModeFail], WithinAbs(0.5, 1e-12));
  CHECK_THAT(mid.given_g[kModeD1], WithinAbs(0.5, 1e-12));

  // Born probabilities of the network equal POVM expectations on a Jordan block.
  const JordanPairSet set = build_gh_bases(3);
  for (int k = 0; k < 20; ++k) {
    const double w = kPi / 2.0 * k / 19.0;
    const auto p = discriminator_probabilities(w);
    const auto m = subspace_povm(set.g[5], set.h[5], w);
    const CVector& g = set.g[5].amplitudes();
    const CVector& h = set.h[5].amplitudes();
    CHECK_THAT(p.given_g[kModeD1], WithinAbs(g.dot(m.pi1.entries * g).real(), 1e-12));
    CHECK_THAT(p.given_h[kModeD2], WithinAbs(h.dot(m.pi2.entries * h).real(), 1e-12));
    CHECK_THAT(p.given_g[kModeFail], WithinAbs(g.dot(m.pi0.entries * g).real(), 1e-12));
    CHECK_THAT(p.given_h[kModeFail], WithinAbs(h.dot(m.pi0.entries * h).real(), 1e-12));
  }
  CHECK((discriminator_input_g() - Eigen::Vector3cd(std::sqrt(3.0) / 2.0, -0.5, 0.0)).norm() < 1e-15);
  CHECK((discriminator_input_h() - Eigen::Vector3cd(0.0, 1.0, 0.0)).norm() < 1e-15);
}

TEST_CASE("reck_decompose", "[optics]") {
  SECTION("identity needs no splitters") {
    const Interferometer net = reck_decompose(CMatrix::Identity(4, 4));
    CHECK(net.layers().empty());
    for (double p : net.phases()) CHECK(std::abs(p) < 1e-15);
  }
  SECTION("single two-mode block") {
    CMatrix u = two_mode_unitary(0.7, 0.3, -1.1);
    const Interferometer net = reck_decompose(u);
    CHECK(net.layers().size() <= 1);
    CHECK(qtest::max_entry(net.unitary() - u) < 1e-12);
  }
  SECTION("Haar 4x4 with seed 42") {
    const CMatrix u = qtest::random_unitary(4, 42);
    const Interferometer net = reck_decompose(u);
    CHECK(qtest::max_entry(net.unitary() - u) < 1e-10);
    CHECK(net.layers().size() <= 6);
  }
  SECTION("round trip for N <= 8") {
    for (int n = 1; n <= 8; ++n)
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const CMatrix u = qtest::random_unitary(n, 1000 * n + seed);
        const Interferometer net = reck_decompose(u);
        CHECK(qtest::max_entry(net.unitary() - u) < 1e-10);
        CHECK(static_cast<int>(net.layers().size()) <= n * (n - 1) / 2);
        // Serialization keeps the round trip within the same bound.
        CHECK(qtest::max_entry(Interferometer::parse(net.serialize()).unitary() - u) < 1e-10);
      }
  }
  SECTION("permutation matrix with zero entries") {
    CMatrix p = CMatrix::Zero(3, 3);
    p(0, 2) = 1.0;
    p(1, 0) = Complex(0.0, 1.0);
    p(2, 1) = -1.0;
    CHECK(qtest::max_entry(reck_decompose(p).unitary() - p) < 1e-12);
  }
  SECTION("non-unitary input") {
    CMatrix m = CMatrix::Identity(3, 3);
    m(0, 1) = 0.1;
    CHECK_THROWS_AS(reck_decompose(m), ContractError);
    CHECK_THROWS_AS(reck_decompose(CMatrix::Identity(2, 3)), ContractError);
  }
}

TEST_CASE("prepare_state_network", "[optics]") {
  SECTION("basis vector") {
    const Interferometer net = prepare_state_network(basis(4, 0), 4);
    CHECK(net.layers().empty());
    CHECK((net.unitary().col(0) - basis(4, 0)).norm() < 1e-12);
  }
  SECTION("balanced pair") {
    CVector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const Interferometer net = prepare_state_network(v, 2);
    CHECK(net.layers().size() == 1);
    CHECK((net.unitary().col(0) - v).norm() < 1e-10);
  }
  SECTION("Haar 5-vector with seed 7") {
    const CVector v = qtest::random_unit(5, 7);
    const Interferometer net = prepare_state_network(v, 5);
    CHECK((net.unitary().col(0) - v).norm() < 1e-10);
    CHECK(net.layers().size() <= 4);
  }
  SECTION("property over seeds and sizes") {
    for (int n = 1; n <= 8; ++n)
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const CVector v = qtest::random_unit(n, 31 * seed + n);
        CHECK((prepare_state_network(v, n).unitary().col(0) - v).norm() < 1e-10);
      }
  }
  SECTION("errors") {
    CVector v(2);
    v << 1.0, 1.0;
    CHECK_THROWS_AS(prepare_state_network(v, 2), ContractError);
    CHECK_THROWS_AS(prepare_state_network(basis(3, 0), 2), ContractError);
  }
}

TEST_CASE("simulate_clicks", "[optics]") {
  SECTION("identity network keeps the photon in its mode") {
    const Interferometer id(3);
    const auto stats = simulate_clicks(id, mode_state(basis(3, 0)), 1000, 5);
    CHECK(stats.counts[0] == 1000);
    CHECK(stats.counts[1] == 0);
    CHECK(stats.counts[2] == 0);
  }
  SECTION("balanced splitter within 5 sigma") {
    Interferometer bs(2);
    bs.add_layer({0, 1, kPi / 4.0, 0.0, 0.0});
    const std::uint64_t shots = 100000;
    const auto stats = simulate_clicks(bs, mode_state(basis(2, 0)), shots, 99);
    CHECK(stats.counts[0] + stats.counts[1] == shots);
    const double sigma = std::sqrt(0.25 / shots);
    CHECK(std::abs(static_cast<double>(stats.counts[0]) / shots - 0.5) < 5.0 * sigma);
  }
  SECTION("discriminator with input g at x = 2") {
    const auto net = discriminator_network(kThirdAngle);
    const std::uint64_t shots = 100000;
    const auto stats = simulate_clicks(net.network, mode_state(discriminator_input_g()), shots, 2718);
    const double f = static_cast<double>(stats.counts[kModeD1]) / shots;
    CHECK(std::abs(f - 0.5) < 5.0 * binomial_sigma(0.5, shots));
    CHECK(stats.counts[kModeD2] == 0);
  }
  SECTION("total variation distance bound") {
    const CMatrix u = qtest::random_unitary(5, 17);
    Interferometer net = reck_decompose(u);
    const CVector in = qtest::random_unit(5, 18);
    const std::vector<double> exact = output_distribution(net, in);
    for (std::uint64_t shots : {1000ULL, 20000ULL}) {
      const auto stats = simulate_clicks(net, mode_state(in), shots, 4 * shots);
      double tv = 0.0;
      for (std::size_t k = 0; k < exact.size(); ++k)
        tv += std::abs(static_cast<double>(stats.counts[k]) / shots - exact[k]);
      tv *= 0.5;
      CHECK(tv < 5.0 * std::sqrt(5.0 / static_cast<double>(shots)));
    }
  }
  SECTION("determinism and chunk independence") {
    const auto net = discriminator_network(0.8);
    const auto a = simulate_clicks(net.network, mode_state(discriminator_input_h()), 50000, 11);
    const auto b = simulate_clicks(net.network, mode_state(discriminator_input_h()), 50000, 11);
    CHECK(a.counts == b.counts);
    // Shot s depends only on (seed, s), so a shorter run is a sub-multiset of a longer one.
    const auto prefix = simulate_clicks(net.network, mode_state(discriminator_input_h()), 20000, 11);
    for (std::size_t k = 0; k < 3; ++k) CHECK(prefix.counts[k] <= a.counts[k]);
    const auto one = simulate_clicks(net.network, mode_state(discriminator_input_h()), 1, 11);
    CHECK(std::accumulate(one.counts.begin(), one.counts.end(), std::uint64_t{0}) == 1);
  }
  SECTION("errors") {
    const Interferometer id(3);
    CHECK_THROWS_AS(simulate_clicks(id, mode_state(basis(2, 0)), 10, 1), ContractError);
    CHECK_THROWS_AS(simulate_clicks(id, mode_state(basis(3, 0)), 0, 1), DomainError);
  }
}

TEST_CASE("sample_index", "[optics]") {
  const std::vector<double> p{0.2, 0.0, 0.5, 0.3};
  CHECK(sample_index(p, 0.0) == 0);
  CHECK(sample_index(p, 0.1999) == 0);
  CHECK(sample_index(p, 0.2) == 2);
  CHECK(sample_index(p, 0.69) == 2);
  CHECK(sample_index(p, 0.71) == 3);
  CHECK(sample_index(p, 0.999999) == 3);
}

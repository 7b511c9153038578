#pragma once

// Seeded generators and brute-force oracles shared by the test binaries.
// Nothing here calls into the library's own constructions.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "qudisc/linalg.hpp"

namespace qtest {

using qudisc::CMatrix;
using qudisc::Complex;
using qudisc::CVector;

inline CVector random_unit(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal;
  CVector v(n);
  for (int k = 0; k < n; ++k) v(k) = Complex(normal(gen), normal(gen));
  return v.normalized();
}

// Haar unitary: QR of a complex Gaussian matrix with the phases of R's diagonal folded back.
inline CMatrix random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  CMatrix z(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) z(r, c) = Complex(normal(gen), normal(gen));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < n; ++c) q.col(c) *= r(c, c) / std::abs(r(c, c));
  return q;
}

inline double random_angle(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return std::uniform_real_distribution<double>(0.0, std::numbers::pi / 2.0)(gen);
}

inline double max_entry(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Ket with 1-based labels, built by explicit positional arithmetic.
inline CVector ket(int n, std::initializer_list<int> labels) {
  int idx = 0;
  for (int l : labels) idx = idx * n + (l - 1);
  int dim = 1;
  for (std::size_t k = 0; k < labels.size(); ++k) dim *= n;
  CVector v = CVector::Zero(dim);
  v(idx) = 1.0;
  return v;
}

// Operator sending |x0 x1 x2> to the ket whose slot perm[r] holds x_r.
inline CMatrix permutation_oracle(int n, std::array<int, 3> perm) {
  const int dim = n * n * n;
  CMatrix p = CMatrix::Zero(dim, dim);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const int in[3] = {a, b, c};
        int out[3];
        for (int r = 0; r < 3; ++r) out[perm[static_cast<std::size_t>(r)]] = in[r];
        p((out[0] * n + out[1]) * n + out[2], (a * n + b) * n + c) = 1.0;
      }
  return p;
}

// Average of the six register permutations.
inline CMatrix symmetrizer3_oracle(int n) {
  std::array<int, 3> perm{0, 1, 2};
  const int dim = n * n * n;
  CMatrix sum = CMatrix::Zero(dim, dim);
  do {
    sum += permutation_oracle(n, perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum / 6.0;
}

// SWAP on two qudits by index arithmetic.
inline CMatrix swap_oracle(int n) {
  CMatrix s = CMatrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) s(b * n + a, a * n + b) = 1.0;
  return s;
}

// Rank of a Hermitian positive semidefinite matrix from its spectrum.
inline int psd_rank(const CMatrix& h, double threshold = 1e-8) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  int rank = 0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()(k) > threshold) ++rank;
  return rank;
}

inline double min_eig(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Maximum of f over a uniform grid of `steps` intervals on [a, b].
inline double grid_max(const std::function<double(double)>& f, double a, double b, long steps) {
  double best = -INFINITY;
  for (long k = 0; k <= steps; ++k) best = std::max(best, f(a + (b - a) * static_cast<double>(k) / steps));
  return best;
}

// Per-subspace success evaluated from the angle picture, not the x substitution.
inline double subspace_success_oracle(double omega1, double eta1) {
  const double s2 = std::sin(omega1) * std::sin(omega1);
  const double c2 = std::cos(omega1) * std::cos(omega1);
  return eta1 * 0.75 * s2 + (1.0 - eta1) * 3.0 * c2 / (1.0 + 3.0 * c2);
}

}  // namespace qtest

#include "qudisc/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qudisc {

const char* to_string(PairKind kind) {
  switch (kind) {
    case PairKind::EqualLow: return "i=j<k";
    case PairKind::EqualHigh: return "i<j=k";
    case PairKind::Distinct: return "i<j<k";
    case PairKind::DistinctPrimed: return "i<j<k'";
  }
  return "?";
}

JordanPairSet build_gh_bases(int n) {
  require_dimension(n, "build_gh_bases");
  const double r13 = std::sqrt(1.0 / 3.0);
  const double r23 = std::sqrt(2.0 / 3.0);
  const double a = (3.0 - std::sqrt(3.0)) / 6.0;
  const double b = (3.0 + std::sqrt(3.0)) / 6.0;
  const double c = std::sqrt(3.0) / 3.0;

  auto u = [n](int i, int j) { return symmetric_pair_vector(n, {i, j}); };
  auto e = [n](int i) { return basis_ket(n, {i}); };
  auto ket = [n](int i, int j, int k) { return basis_ket(n, {i, j, k}); };

  JordanPairSet set;
  set.n = n;
  const SpaceSpec space{n, 3};
  auto emit = [&](PairKind kind, SymmetricTriple t, CVector g, CVector h) {
    set.g.emplace_back(space, std::move(g));
    set.h.emplace_back(space, std::move(h));
    set.labels.push_back({kind, t});
  };

  for (const auto& t : ordered_triples(n)) {
    const auto [i, j, k] = t;
    if (i == j && j == k) continue;
    if (i == j) {
      emit(PairKind::EqualLow, t, r13 * kron(u(i, k), e(j)) - r23 * ket(i, j, k),
           r13 * kron(e(i), u(j, k)) - r23 * ket(k, i, j));
    } else if (j == k) {
      emit(PairKind::EqualHigh, t, r13 * kron(u(i, j), e(k)) - r23 * ket(j, k, i),
           r13 * kron(e(j), u(i, k)) - r23 * ket(i, j, k));
    } else {
      emit(PairKind::Distinct, t,
           a * kron(u(i, j), e(k)) - b * kron(u(i, k), e(j)) + c * kron(u(j, k), e(i)),
           a * kron(e(k), u(i, j)) - b * kron(e(j), u(i, k)) + c * kron(e(i), u(j, k)));
      emit(PairKind::DistinctPrimed, t,
           a * kron(u(i, k), e(j)) - b * kron(u(i, j), e(k)) + c * kron(u(j, k), e(i)),
           a * kron(e(j), u(i, k)) - b * kron(e(k), u(i, j)) + c * kron(e(i), u(j, k)));
    }
  }
  return set;
}

OverlapMatrix overlap_matrix(const JordanPairSet& set) {
  if (set.g.size() != set.h.size() || set.labels.size() != set.g.size())
    throw ContractError("overlap_matrix: g and h families have different lengths");
  OverlapMatrix out;
  out.gram = set.g_matrix().adjoint() * set.h_matrix();
  const Eigen::Index m = out.gram.rows();
  out.max_deviation = max_abs(out.gram + 0.5 * CMatrix::Identity(m, m));
  return out;
}

JordanAngles jordan_angles(const CMatrix& a, const CMatrix& b, double tol) {
  if (a.rows() != b.rows()) throw ContractError("jordan_angles: families live in different spaces");
  if (orthonormality_defect(a) > tol) throw ContractError("jordan_angles: first family is not orthonormal");
  if (orthonormality_defect(b) > tol) throw ContractError("jordan_angles: second family is not orthonormal");
  JordanAngles out;
  if (a.cols() == 0 || b.cols() == 0) return out;
  Eigen::JacobiSVD<CMatrix> svd(a.adjoint() * b);
  const auto& s = svd.singularValues();
  out.cosines.assign(s.data(), s.data() + s.size());
  std::sort(out.cosines.begin(), out.cosines.end(), std::greater<>());
  return out;
}

JordanAngles jordan_angles(const std::vector<StateVector>& a, const std::vector<StateVector>& b, double tol) {
  return jordan_angles(column_stack(a), column_stack(b), tol);
}

Operator symmetric_projector_3(int n) {
  require_dimension(n, "symmetric_projector_3");
  const CMatrix basis = column_stack(symmetric_basis_3(n));
  return {SpaceSpec{n, 3}, basis * basis.adjoint()};
}

DensityPair density_from_jordan(int n) {
  require_dimension(n, "density_from_jordan");
  const JordanPairSet set = build_gh_bases(n);
  const CMatrix p_s0 = symmetric_projector_3(n).entries;
  const CMatrix g = set.g_matrix();
  const CMatrix h = set.h_matrix();
  const double pre = density_prefactor(n);
  return {Operator{SpaceSpec{n, 3}, pre * (p_s0 + g * g.adjoint())},
          Operator{SpaceSpec{n, 3}, pre * (p_s0 + h * h.adjoint())}};
}

}  // namespace qudisc

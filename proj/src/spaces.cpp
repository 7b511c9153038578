#include "qudisc/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qudisc/jordan.hpp"

namespace qudisc {

void require_dimension(int n, const char* where) {
  if (n < 2) throw DomainError(std::string(where) + ": qudit dimension must be >= 2, got " + std::to_string(n));
}

namespace {

void require_label(int label, int n) {
  if (label < 1 || label > n)
    throw DomainError("basis label " + std::to_string(label) + " outside {1.." + std::to_string(n) + "}");
}

CMatrix identity(int n) { return CMatrix::Identity(n, n); }

}  // namespace

std::size_t flatten_index(BasisTriple triple, int n) {
  return flatten_index({triple.a, triple.b, triple.c}, n);
}

std::size_t flatten_index(std::initializer_list<int> labels, int n) {
  if (n < 1) throw DomainError("flatten_index: n must be positive");
  std::size_t idx = 0;
  for (int label : labels) {
    require_label(label, n);
    idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(label - 1);
  }
  return idx;
}

CVector basis_ket(int n, std::initializer_list<int> labels) {
  std::size_t dim = 1;
  for (std::size_t f = 0; f < labels.size(); ++f) dim *= static_cast<std::size_t>(n);
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(flatten_index(labels, n))) = 1.0;
  return v;
}

std::vector<SymmetricPair> ordered_pairs(int n) {
  std::vector<SymmetricPair> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) out.push_back({i, j});
  return out;
}

std::vector<SymmetricTriple> ordered_triples(int n) {
  std::vector<SymmetricTriple> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) out.push_back({i, j, k});
  return out;
}

CVector symmetric_pair_vector(int n, SymmetricPair p) {
  require_label(p.i, n);
  require_label(p.j, n);
  if (p.i > p.j) throw DomainError("symmetric_pair_vector: labels must satisfy i <= j");
  if (p.i == p.j) return basis_ket(n, {p.i, p.i});
  return (basis_ket(n, {p.i, p.j}) + basis_ket(n, {p.j, p.i})) / std::sqrt(2.0);
}

CVector symmetric_triple_vector(int n, SymmetricTriple t) {
  const auto [i, j, k] = t;
  require_label(i, n);
  require_label(j, n);
  require_label(k, n);
  if (!(i <= j && j <= k)) throw DomainError("symmetric_triple_vector: labels must satisfy i <= j <= k");
  if (i == j && j == k) return basis_ket(n, {i, j, k});
  if (i == j)
    return (basis_ket(n, {i, j, k}) + basis_ket(n, {i, k, j}) + basis_ket(n, {k, i, j})) / std::sqrt(3.0);
  if (j == k)
    return (basis_ket(n, {i, j, k}) + basis_ket(n, {j, i, k}) + basis_ket(n, {j, k, i})) / std::sqrt(3.0);
  return (basis_ket(n, {i, j, k}) + basis_ket(n, {j, i, k}) + basis_ket(n, {i, k, j}) +
          basis_ket(n, {k, i, j}) + basis_ket(n, {j, k, i}) + basis_ket(n, {k, j, i})) /
         std::sqrt(6.0);
}

std::vector<StateVector> symmetric_basis_2(int n) {
  require_dimension(n, "symmetric_basis_2");
  std::vector<StateVector> out;
  for (const auto& p : ordered_pairs(n)) out.emplace_back(SpaceSpec{n, 2}, symmetric_pair_vector(n, p));
  return out;
}

std::vector<StateVector> symmetric_basis_3(int n) {
  require_dimension(n, "symmetric_basis_3");
  std::vector<StateVector> out;
  for (const auto& t : ordered_triples(n)) out.emplace_back(SpaceSpec{n, 3}, symmetric_triple_vector(n, t));
  return out;
}

Operator symmetric_projector(int n) {
  require_dimension(n, "symmetric_projector");
  CMatrix p = CMatrix::Zero(n * n, n * n);
  for (const auto& pair : ordered_pairs(n)) {
    const CVector u = symmetric_pair_vector(n, pair);
    p += u * u.adjoint();
  }
  return {SpaceSpec{n, 2}, std::move(p)};
}

Operator swap_operator(int n) {
  if (n < 1) throw DomainError("swap_operator: n must be positive");
  CMatrix s = CMatrix::Zero(n * n, n * n);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      s(static_cast<Eigen::Index>(flatten_index({b, a}, n)), static_cast<Eigen::Index>(flatten_index({a, b}, n))) = 1.0;
  return {SpaceSpec{n, 2}, std::move(s)};
}

CMatrix register_permutation(int n, std::array<int, 3> perm) {
  auto sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{0, 1, 2}) throw DomainError("register_permutation: not a permutation of {0,1,2}");
  const Eigen::Index dim = static_cast<Eigen::Index>(n) * n * n;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int c = 1; c <= n; ++c) {
        const std::array<int, 3> in{a, b, c};
        std::array<int, 3> out{};
        for (int r = 0; r < 3; ++r) out[static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])] = in[static_cast<std::size_t>(r)];
        m(static_cast<Eigen::Index>(flatten_index({out[0], out[1], out[2]}, n)),
          static_cast<Eigen::Index>(flatten_index({a, b, c}, n))) = 1.0;
      }
  return m;
}

std::vector<CMatrix> register_permutations(int n) {
  std::array<int, 3> perm{0, 1, 2};
  std::vector<CMatrix> out;
  do {
    out.push_back(register_permutation(n, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

double density_prefactor(int n) { return 2.0 / (static_cast<double>(n) * n * (n + 1)); }

DensityPair mean_density_operators(int n) {
  require_dimension(n, "mean_density_operators");
  const CMatrix p_sym = symmetric_projector(n).entries;
  const double c = density_prefactor(n);
  return {Operator{SpaceSpec{n, 3}, c * kron(p_sym, identity(n))},
          Operator{SpaceSpec{n, 3}, c * kron(identity(n), p_sym)}};
}

DimensionTable dimension_table(int n) {
  require_dimension(n, "dimension_table");
  const long m = n;
  DimensionTable t;
  t.n = n;
  t.dim_sigma = m * (m + 1) / 2;
  t.dim_s0 = m * (m + 1) * (m + 2) / 6;
  t.dim_s1 = m * m * (m + 1) / 2;
  t.dim_s2 = t.dim_s1;
  t.dim_s3 = m * (m + 1) * (5 * m - 2) / 6;
  t.dim_s4 = t.dim_s1 - t.dim_s0;
  t.dim_s5 = t.dim_s4;
  t.dim_s6 = 2 * m * (m + 1) * (m - 1) / 3;
  t.i0 = m * (m + 1) * (m - 1) / 3;
  return t;
}

DimensionTable constructive_dimensions(int n, double rank_threshold) {
  require_dimension(n, "constructive_dimensions");
  const CMatrix p_sym = symmetric_projector(n).entries;
  const CMatrix p_s1 = kron(p_sym, identity(n));
  const CMatrix p_s2 = kron(identity(n), p_sym);
  const CMatrix s0_basis = column_stack(symmetric_basis_3(n));
  const CMatrix p_s0 = s0_basis * s0_basis.adjoint();

  CMatrix s1_s2(p_s1.rows(), p_s1.cols() * 2);
  s1_s2 << p_s1, p_s2;
  // Orthogonal projector onto span(S1 u S2) via its orthonormal column basis.
  Eigen::BDCSVD<CMatrix> svd(s1_s2, Eigen::ComputeThinU);
  Eigen::Index r3 = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > rank_threshold) ++r3;
  const CMatrix s3_basis = svd.matrixU().leftCols(r3);
  const CMatrix p_s3 = s3_basis * s3_basis.adjoint();

  DimensionTable t;
  t.n = n;
  t.dim_sigma = static_cast<long>(numerical_rank(p_sym, rank_threshold));
  t.dim_s0 = static_cast<long>(numerical_rank(s0_basis, rank_threshold));
  t.dim_s1 = static_cast<long>(numerical_rank(p_s1, rank_threshold));
  t.dim_s2 = static_cast<long>(numerical_rank(p_s2, rank_threshold));
  t.dim_s3 = static_cast<long>(r3);
  t.dim_s4 = static_cast<long>(numerical_rank(p_s1 - p_s0, rank_threshold));
  t.dim_s5 = static_cast<long>(numerical_rank(p_s2 - p_s0, rank_threshold));
  t.dim_s6 = static_cast<long>(numerical_rank(p_s3 - p_s0, rank_threshold));
  t.i0 = static_cast<long>(build_gh_bases(n).g.size());
  return t;
}

std::vector<ExpansionTerm> expand_u3(int n, SymmetricTriple t, Side side) {
  require_dimension(n, "expand_u3");
  const auto [i, j, k] = t;
  require_label(i, n);
  require_label(j, n);
  require_label(k, n);
  if (!(i <= j && j <= k)) throw DomainError("expand_u3: triple must satisfy i <= j <= k");

  const double r23 = std::sqrt(2.0 / 3.0);
  const double r13 = std::sqrt(1.0 / 3.0);
  if (i == j && j == k) return {{1.0, {i, i}, i}};

  // Side S1 terms read |u_ab>|s>, side S2 terms read |s>|u_ab>.
  if (side == Side::S1) {
    if (i == j) return {{r23, {i, k}, j}, {r13, {i, j}, k}};  // |ijk> = |u_ii>|k>
    if (j == k) return {{r23, {i, j}, k}, {r13, {j, k}, i}};  // |jki> = |u_jj>|i>
    return {{r13, {i, j}, k}, {r13, {i, k}, j}, {r13, {j, k}, i}};
  }
  if (i == j) return {{r23, {j, k}, i}, {r13, {i, j}, k}};  // |kij> = |k>|u_ii>
  if (j == k) return {{r23, {i, k}, j}, {r13, {j, k}, i}};  // |ijk> = |i>|u_jj>
  return {{r13, {i, j}, k}, {r13, {i, k}, j}, {r13, {j, k}, i}};
}

CVector expansion_vector(int n, const std::vector<ExpansionTerm>& terms, Side side) {
  const Eigen::Index dim = static_cast<Eigen::Index>(n) * n * n;
  CVector v = CVector::Zero(dim);
  for (const auto& term : terms) {
    const CVector pair = symmetric_pair_vector(n, term.pair);
    const CVector single = basis_ket(n, {term.single});
    v += term.coefficient * (side == Side::S1 ? kron(pair, single) : kron(single, pair));
  }
  return v;
}

}  // namespace qudisc

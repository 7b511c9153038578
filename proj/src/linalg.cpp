#include "qudisc/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qudisc {

std::size_t SpaceSpec::dim() const {
  std::size_t d = 1;
  for (int f = 0; f < factors; ++f) d *= static_cast<std::size_t>(n);
  return d;
}

StateVector::StateVector(SpaceSpec space, CVector amplitudes, double norm_tol)
    : space_(space), amplitudes_(std::move(amplitudes)) {
  if (space_.n < 1 || space_.factors < 1)
    throw DomainError("StateVector: space must have n >= 1 and at least one factor");
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.dim())
    throw ContractError("StateVector: amplitude count " + std::to_string(amplitudes_.size()) +
                        " does not match space dimension " + std::to_string(space_.dim()));
  const double norm = amplitudes_.norm();
  if (!(std::abs(norm - 1.0) <= norm_tol))
    throw ContractError("StateVector: amplitudes are not unit norm (norm = " +
                        std::to_string(norm) + ")");
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

std::size_t numerical_rank(const CMatrix& m, double threshold) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  return static_cast<std::size_t>(std::count_if(s.data(), s.data() + s.size(),
                                                [&](double v) { return v > threshold; }));
}

CMatrix column_stack(const std::vector<StateVector>& vectors) {
  if (vectors.empty()) return {};
  CMatrix out(vectors.front().size(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t c = 0; c < vectors.size(); ++c) {
    if (vectors[c].size() != vectors.front().size())
      throw ContractError("column_stack: vectors live in different spaces");
    out.col(static_cast<Eigen::Index>(c)) = vectors[c].amplitudes();
  }
  return out;
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const CMatrix& m) { return max_abs(m - m.adjoint()); }

double unitarity_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return max_abs(m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols()));
}

double orthonormality_defect(const CMatrix& columns) {
  return max_abs(columns.adjoint() * columns - CMatrix::Identity(columns.cols(), columns.cols()));
}

double min_eigenvalue(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  const CMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_projector(const Operator& op, double tol) {
  const auto& p = op.entries;
  return hermiticity_defect(p) <= tol && max_abs(p * p - p) <= tol;
}

bool is_unitary(const Operator& op, double tol) { return unitarity_defect(op.entries) <= tol; }

bool is_density(const Operator& op, double tol) {
  const auto& r = op.entries;
  return hermiticity_defect(r) <= tol && min_eigenvalue(r) >= -tol &&
         std::abs(r.trace() - Complex(1.0)) <= tol;
}

}  // namespace qudisc

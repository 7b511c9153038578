#pragma once

// Shared value types, error classes and small dense linear-algebra helpers.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qudisc {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Argument outside the mathematical domain of an operation (n < 2, x > 4, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Priors with eta1 in {0, 1}: discrimination is trivial and the optimum is undefined.
class DegeneratePriorError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Inputs that are well-typed but violate a documented precondition
/// (non-orthonormal family, non-unitary matrix, wrong dimension, ...).
class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Numerical thresholds. Defaults leave headroom over accumulation error at
/// the largest dense size used (n = 5, side 125).
struct Tolerances {
  double norm = 1e-10;
  double op = 1e-10;
  double rank = 1e-8;
};

/// Tensor-product space of `factors` copies of an n-dimensional qudit.
struct SpaceSpec {
  int n = 2;
  int factors = 1;

  std::size_t dim() const;
  bool operator==(const SpaceSpec&) const = default;
};

/// Unit-norm amplitude vector over the row-major product basis of `space`.
class StateVector {
public:
  StateVector(SpaceSpec space, CVector amplitudes, double norm_tol = Tolerances{}.norm);

  const SpaceSpec& space() const { return space_; }
  const CVector& amplitudes() const { return amplitudes_; }
  std::size_t size() const { return static_cast<std::size_t>(amplitudes_.size()); }

private:
  SpaceSpec space_;
  CVector amplitudes_;
};

/// Square complex matrix acting on `space`.
struct Operator {
  SpaceSpec space;
  CMatrix entries;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

/// Number of singular values strictly above `threshold`.
std::size_t numerical_rank(const CMatrix& m, double threshold);

/// Stack vectors as columns.
CMatrix column_stack(const std::vector<StateVector>& vectors);

double max_abs(const CMatrix& m);
double hermiticity_defect(const CMatrix& m);
double unitarity_defect(const CMatrix& m);
double orthonormality_defect(const CMatrix& columns);
/// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const CMatrix& m);

bool is_projector(const Operator& op, double tol);
bool is_unitary(const Operator& op, double tol);
bool is_density(const Operator& op, double tol);

}  // namespace qudisc

#pragma once

// Explicit Jordan (canonical) bases of S4 = S1 - S0 and S5 = S2 - S0, and a
// general principal-angle routine used to cross-check them.

#include <vector>

#include "qudisc/linalg.hpp"
#include "qudisc/spaces.hpp"

namespace qudisc {

enum class PairKind {
  EqualLow,        // i = j < k
  EqualHigh,       // i < j = k
  Distinct,        // i < j < k, unprimed
  DistinctPrimed,  // i < j < k, primed
};

const char* to_string(PairKind kind);

struct JordanLabel {
  PairKind kind;
  SymmetricTriple triple;
};

/// g[i] spans S4, h[i] spans S5, with <g_i|h_j> = -1/2 delta_ij.
struct JordanPairSet {
  int n = 0;
  std::vector<StateVector> g;
  std::vector<StateVector> h;
  std::vector<JordanLabel> labels;

  std::size_t size() const { return g.size(); }
  CMatrix g_matrix() const { return column_stack(g); }
  CMatrix h_matrix() const { return column_stack(h); }
};

/// One (g, h) pair per i = j < k and per i < j = k, two per i < j < k
/// (unprimed first); lexicographic in the triple.
JordanPairSet build_gh_bases(int n);

struct OverlapMatrix {
  CMatrix gram;          // gram(i, j) = <g_i|h_j>
  double max_deviation;  // max |gram(i, j) + delta_ij / 2|
};

OverlapMatrix overlap_matrix(const JordanPairSet& set);

/// Cosines of the principal angles, descending.
struct JordanAngles {
  std::vector<double> cosines;
};

/// Singular values of A^dagger B for column-orthonormal A, B.
/// Throws ContractError if either family deviates from orthonormal by more than `tol`.
JordanAngles jordan_angles(const CMatrix& a, const CMatrix& b, double tol = Tolerances{}.op);
JordanAngles jordan_angles(const std::vector<StateVector>& a, const std::vector<StateVector>& b,
                           double tol = Tolerances{}.op);

/// Projector onto the fully symmetric subspace S0 of the three registers.
Operator symmetric_projector_3(int n);

/// rho1, rho2 rebuilt as prefactor * (P_S0 + sum |g_i><g_i|) and likewise with h.
DensityPair density_from_jordan(int n);

}  // namespace qudisc

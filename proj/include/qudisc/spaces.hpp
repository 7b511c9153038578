#pragma once

// Three-register qudit space H_A (x) H_B (x) H_C, its symmetric subspaces and
// the averaged input density operators.
//
// Basis labels are 1-based tuples; flat indices are 0-based row-major with
// register A varying slowest.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qudisc/linalg.hpp"

namespace qudisc {

struct BasisTriple {
  int a, b, c;
};

/// i <= j, labels of a symmetric two-qudit basis vector.
struct SymmetricPair {
  int i, j;
  bool operator==(const SymmetricPair&) const = default;
};

/// i <= j <= k, labels of a symmetric three-qudit basis vector.
struct SymmetricTriple {
  int i, j, k;
  bool operator==(const SymmetricTriple&) const = default;
};

std::size_t flatten_index(BasisTriple triple, int n);
std::size_t flatten_index(std::initializer_list<int> labels, int n);

/// Computational basis ket |l1 l2 ...> over `labels.size()` factors.
CVector basis_ket(int n, std::initializer_list<int> labels);

/// All i <= j in lexicographic order.
std::vector<SymmetricPair> ordered_pairs(int n);
/// All i <= j <= k in lexicographic order.
std::vector<SymmetricTriple> ordered_triples(int n);

/// |u_ij>: |ii> or (|ij> + |ji>)/sqrt(2). Requires i <= j.
CVector symmetric_pair_vector(int n, SymmetricPair p);
/// |u_ijk>: normalized sum over the distinct permutations of |ijk>. Requires i <= j <= k.
CVector symmetric_triple_vector(int n, SymmetricTriple t);

std::vector<StateVector> symmetric_basis_2(int n);
std::vector<StateVector> symmetric_basis_3(int n);

/// Projector onto the symmetric subspace of H (x) H.
Operator symmetric_projector(int n);
/// Exchange operator on H (x) H.
Operator swap_operator(int n);
/// Operator that moves register r of a three-qudit ket to position perm[r] (perm is 0-based).
CMatrix register_permutation(int n, std::array<int, 3> perm);
/// All six register permutations in lexicographic order of `perm`.
std::vector<CMatrix> register_permutations(int n);

struct DensityPair {
  Operator rho1;  // P_sym(AB) (x) I_C, normalized
  Operator rho2;  // I_A (x) P_sym(BC), normalized
};

/// Haar averages of |psi1 psi1 psi2><.| and |psi1 psi2 psi2><.|.
DensityPair mean_density_operators(int n);

/// Common prefactor 2 / (n^2 (n + 1)) of both averaged density operators.
double density_prefactor(int n);

struct DimensionTable {
  int n = 0;
  long dim_sigma = 0;
  long dim_s0 = 0;
  long dim_s1 = 0;
  long dim_s2 = 0;
  long dim_s3 = 0;
  long dim_s4 = 0;
  long dim_s5 = 0;
  long dim_s6 = 0;
  long i0 = 0;

  bool operator==(const DimensionTable&) const = default;
};

/// Closed-form dimensions.
DimensionTable dimension_table(int n);

/// Same quantities measured as SVD ranks of explicitly built spans and
/// projectors. i0 is counted from the explicit Jordan-pair construction.
DimensionTable constructive_dimensions(int n, double rank_threshold = Tolerances{}.rank);

enum class Side { S1, S2 };

/// One term c * |u_ab>|s> (side S1) or c * |s>|u_ab> (side S2).
struct ExpansionTerm {
  double coefficient;
  SymmetricPair pair;
  int single;
};

/// Coefficients of |u_ijk> over the product basis of S1 = Sym(AB) (x) H_C
/// or S2 = H_A (x) Sym(BC). i = j = k yields the single term |u_ii>|i>.
std::vector<ExpansionTerm> expand_u3(int n, SymmetricTriple t, Side side);

/// Resums an expansion into a full three-qudit amplitude vector.
CVector expansion_vector(int n, const std::vector<ExpansionTerm>& terms, Side side);

// Internal precondition helper, shared across modules.
void require_dimension(int n, const char* where);

}  // namespace qudisc

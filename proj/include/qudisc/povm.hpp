#pragma once

// Detection operators of the programmable discriminator and the success
// probabilities they achieve, in closed form and by direct operator algebra.
//
// The single free parameter is the beamsplitter angle omega1 in [0, pi/2];
// x = 1 + 3 cos^2(omega1) in [1, 4] is the equivalent scalar used by the
// optimizers.

#include <string>

#include "qudisc/jordan.hpp"
#include "qudisc/linalg.hpp"

namespace qudisc {

/// Prior probabilities that the data register holds psi1 (eta1) or psi2 (eta2).
class Priors {
public:
  Priors(double eta1, double eta2);
  static Priors from_eta1(double eta1);

  double eta1() const { return eta1_; }
  double eta2() const { return eta2_; }
  bool degenerate() const { return eta1_ <= 0.0 || eta1_ >= 1.0; }

private:
  double eta1_;
  double eta2_;
};

enum class Regime { Low, Middle, High };
const char* to_string(Regime regime);

struct RegimeResult {
  double value;
  Regime regime;
  double x_star;
  double omega1_star;
};

struct ReciprocalPair {
  StateVector g_perp;  // orthogonal to h
  StateVector h_perp;  // orthogonal to g
};

/// Requires <g|h> = -1/2 (real) within 1e-6.
ReciprocalPair reciprocal_pair(const StateVector& g, const StateVector& h);

/// pi1 + pi2 + pi0 = identity, where identity is the full identity for the
/// total POVM and the projector onto span(g, h) for a single subspace.
struct MeasurementTriple {
  Operator pi1;
  Operator pi2;
  Operator pi0;
  Operator identity;
  double omega1;
};

MeasurementTriple subspace_povm(const StateVector& g, const StateVector& h, double omega1);
MeasurementTriple total_povm(int n, double omega1);
MeasurementTriple total_povm(const JordanPairSet& set, double omega1);

double x_from_omega1(double omega1);
double omega1_from_x(double x);

/// Per-subspace success 1 - eta1 x / 4 - eta2 / x, x in [1, 4].
double success_curve_x(double x, const Priors& priors);

RegimeResult optimal_subspace(const Priors& priors);

/// Success for the averaged density operators, closed form.
double average_success(int n, double omega1, const Priors& priors);
/// Same quantity as eta1 Tr(pi1 rho1) + eta2 Tr(pi2 rho2).
double average_success_by_trace(int n, double omega1, const Priors& priors);

RegimeResult optimal_average(int n, const Priors& priors);

/// |psi1 psi1 psi2> (which = 1) or |psi1 psi2 psi2> (which = 2).
StateVector program_input(const StateVector& psi1, const StateVector& psi2, int which);

/// Success for a known pair of pure states, closed form.
double pure_success(const StateVector& psi1, const StateVector& psi2, double omega1, const Priors& priors, int n);
/// Same quantity as eta1 <Psi1|pi1|Psi1> + eta2 <Psi2|pi2|Psi2>.
double pure_success_by_expectation(const MeasurementTriple& povm, const StateVector& psi1,
                                   const StateVector& psi2, const Priors& priors);

/// Takes the squared overlap |<psi1|psi2>|^2; no dimension argument.
RegimeResult optimal_pure(double overlap_sq, const Priors& priors);

/// omega2 in [0, pi/2] with cos^2(omega2) = 1 / (1 + 3 cos^2(omega1)).
double omega2_constraint(double omega1);

/// Clamps p to [0, 1]; throws DomainError outside [-1e-12, 1 + 1e-12].
double checked_probability(double p, const char* what = "probability");

/// Throws DomainError unless omega1 lies in [0, pi/2] (1e-12 slack); returns the clamped value.
double checked_omega1(double omega1);

}  // namespace qudisc

#pragma once

// Idealized single-photon linear optics: two-mode blocks, triangular mesh
// synthesis, the three-port discriminator and click sampling.
//
// Modes are 0-based in code. The text serialization uses 1-based mode labels
// so that mode k matches the basis ket |k>.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qudisc/linalg.hpp"

namespace qudisc {

/// [[sin w e^{i phi}, cos w e^{i phi}], [cos w e^{i theta}, -sin w e^{i theta}]]
Eigen::Matrix2cd two_mode_unitary(double omega, double phi, double theta);

/// Real splitter [[sin w, cos w], [cos w, -sin w]]; sin w is the transmitted amplitude.
Eigen::Matrix2d beamsplitter(double omega);

struct TwoModeLayer {
  int mode_a;
  int mode_b;
  double omega;
  double phi;
  double theta;
};

/// Phase screen on the inputs followed by two-mode layers in listed order:
/// U = L_K ... L_1 diag(exp(i phase)).
class Interferometer {
public:
  explicit Interferometer(int num_modes);

  void add_layer(const TwoModeLayer& layer);
  void set_phase(int mode, double angle);

  int num_modes() const { return num_modes_; }
  const std::vector<TwoModeLayer>& layers() const { return layers_; }
  const std::vector<double>& phases() const { return phases_; }

  CMatrix unitary() const;

  /// `BS a b omega phi theta` lines, then one `PHASE mode angle` line per mode.
  std::string serialize() const;
  static Interferometer parse(std::string_view text);

private:
  int num_modes_;
  std::vector<TwoModeLayer> layers_;
  std::vector<double> phases_;
};

/// Embeds a layer's 2x2 block into an N x N identity.
CMatrix embed_layer(const TwoModeLayer& layer, int num_modes);

/// Triangular mesh: at most N(N-1)/2 layers plus the input phase screen.
/// Throws ContractError if `u` is not unitary within `tol`.
Interferometer reck_decompose(const CMatrix& u, double tol = 1e-8);

/// Network whose unitary maps mode 0 to the given amplitudes. Uses at most N-1 layers.
Interferometer prepare_state_network(const CVector& amplitudes, int n, double norm_tol = Tolerances{}.norm);

/// Mode roles of the discriminator: inputs (g_perp, h, vacuum), outputs (D1, D2, F).
enum DiscriminatorMode : int { kModeD1 = 0, kModeD2 = 1, kModeFail = 2 };

struct DiscriminatorNetwork {
  Interferometer network;
  CMatrix u3;
  double omega2;  // signed splitter angle used in the second layer
};

/// Two cascaded splitters. The second splitter runs at -omega2_constraint(omega1),
/// the sign for which a g photon never reaches D2.
DiscriminatorNetwork discriminator_network(double omega1);

/// Amplitudes of g and h in the (g_perp, h, vacuum) input basis.
CVector discriminator_input_g();
CVector discriminator_input_h();

struct ClickProbabilities {
  std::array<double, 3> given_g;  // D1, D2, F
  std::array<double, 3> given_h;
};

ClickProbabilities discriminator_probabilities(double omega1);

struct ClickStats {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> counts;  // per output mode
};

/// Born-rule output distribution |<mode|U|input>|^2.
std::vector<double> output_distribution(const Interferometer& net, const CVector& input);

/// Samples output modes i.i.d.; shot s uses the substream (seed, s).
ClickStats simulate_clicks(const Interferometer& net, const StateVector& input, std::uint64_t shots,
                           std::uint64_t seed);

/// Index of the outcome selected by uniform u in [0, 1) from cumulative probabilities.
std::size_t sample_index(const std::vector<double>& probabilities, double u);

}  // namespace qudisc

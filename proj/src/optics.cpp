#include "qudisc/optics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "parallel.hpp"
#include "qudisc/povm.hpp"
#include "qudisc/random.hpp"

namespace qudisc {

namespace {

// Entries below this are treated as already nulled by the mesh synthesis.
constexpr double kNullThreshold = 1e-14;

std::string format_angle(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double phase_of(Complex z) { return z == Complex(0.0) ? 0.0 : std::arg(z); }

// Layer whose inverse maps (x_a, x_b) onto (r, 0) with r = |(x_a, x_b)|.
TwoModeLayer nulling_layer(int a, int b, Complex x_a, Complex x_b) {
  return {a, b, std::atan2(std::abs(x_a), std::abs(x_b)), phase_of(x_a), phase_of(x_b)};
}

void apply_inverse_rows(CMatrix& w, const TwoModeLayer& layer) {
  const Eigen::Matrix2cd inv = two_mode_unitary(layer.omega, layer.phi, layer.theta).adjoint();
  for (Eigen::Index c = 0; c < w.cols(); ++c) {
    const Complex xa = w(layer.mode_a, c);
    const Complex xb = w(layer.mode_b, c);
    w(layer.mode_a, c) = inv(0, 0) * xa + inv(0, 1) * xb;
    w(layer.mode_b, c) = inv(1, 0) * xa + inv(1, 1) * xb;
  }
}

}  // namespace

Eigen::Matrix2cd two_mode_unitary(double omega, double phi, double theta) {
  const Complex ep = std::polar(1.0, phi);
  const Complex et = std::polar(1.0, theta);
  const double s = std::sin(omega);
  const double c = std::cos(omega);
  Eigen::Matrix2cd u;
  u << s * ep, c * ep, c * et, -s * et;
  return u;
}

Eigen::Matrix2d beamsplitter(double omega) {
  const double s = std::sin(omega);
  const double c = std::cos(omega);
  Eigen::Matrix2d b;
  b << s, c, c, -s;
  return b;
}

Interferometer::Interferometer(int num_modes) : num_modes_(num_modes), phases_(static_cast<std::size_t>(std::max(num_modes, 0)), 0.0) {
  if (num_modes < 1) throw DomainError("Interferometer: needs at least one mode");
}

void Interferometer::add_layer(const TwoModeLayer& layer) {
  if (layer.mode_a == layer.mode_b) throw ContractError("TwoModeLayer: mode_a and mode_b must differ");
  for (int m : {layer.mode_a, layer.mode_b})
    if (m < 0 || m >= num_modes_) throw ContractError("TwoModeLayer: mode " + std::to_string(m) + " out of range");
  layers_.push_back(layer);
}

void Interferometer::set_phase(int mode, double angle) {
  if (mode < 0 || mode >= num_modes_) throw ContractError("set_phase: mode out of range");
  phases_[static_cast<std::size_t>(mode)] = angle;
}

CMatrix embed_layer(const TwoModeLayer& layer, int num_modes) {
  CMatrix m = CMatrix::Identity(num_modes, num_modes);
  const Eigen::Matrix2cd block = two_mode_unitary(layer.omega, layer.phi, layer.theta);
  m(layer.mode_a, layer.mode_a) = block(0, 0);
  m(layer.mode_a, layer.mode_b) = block(0, 1);
  m(layer.mode_b, layer.mode_a) = block(1, 0);
  m(layer.mode_b, layer.mode_b) = block(1, 1);
  return m;
}

CMatrix Interferometer::unitary() const {
  CMatrix u = CMatrix::Zero(num_modes_, num_modes_);
  for (int k = 0; k < num_modes_; ++k) u(k, k) = std::polar(1.0, phases_[static_cast<std::size_t>(k)]);
  for (const auto& layer : layers_) u = embed_layer(layer, num_modes_) * u;
  return u;
}

std::string Interferometer::serialize() const {
  std::string out;
  for (const auto& l : layers_) {
    out += "BS " + std::to_string(l.mode_a + 1) + ' ' + std::to_string(l.mode_b + 1) + ' ' + format_angle(l.omega) +
           ' ' + format_angle(l.phi) + ' ' + format_angle(l.theta) + '\n';
  }
  for (int k = 0; k < num_modes_; ++k)
    out += "PHASE " + std::to_string(k + 1) + ' ' + format_angle(phases_[static_cast<std::size_t>(k)]) + '\n';
  return out;
}

Interferometer Interferometer::parse(std::string_view text) {
  struct Phase {
    int mode;
    double angle;
  };
  std::vector<TwoModeLayer> layers;
  std::vector<Phase> phases;
  int max_mode = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw ContractError("interferometer line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "BS") {
      TwoModeLayer l{};
      if (!(ls >> l.mode_a >> l.mode_b >> l.omega >> l.phi >> l.theta)) fail("malformed BS record");
      if (l.mode_a < 1 || l.mode_b < 1) fail("mode labels start at 1");
      max_mode = std::max({max_mode, l.mode_a, l.mode_b});
      --l.mode_a;
      --l.mode_b;
      layers.push_back(l);
    } else if (tag == "PHASE") {
      Phase p{};
      if (!(ls >> p.mode >> p.angle)) fail("malformed PHASE record");
      if (p.mode < 1) fail("mode labels start at 1");
      max_mode = std::max(max_mode, p.mode);
      phases.push_back({p.mode - 1, p.angle});
    } else {
      fail("unknown record '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing tokens");
  }
  if (max_mode == 0) throw ContractError("interferometer: no records");
  Interferometer net(max_mode);
  for (const auto& l : layers) net.add_layer(l);
  for (const auto& p : phases) net.set_phase(p.mode, p.angle);
  return net;
}

Interferometer reck_decompose(const CMatrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) throw ContractError("reck_decompose: expects a non-empty square matrix");
  if (unitarity_defect(u) > tol) throw ContractError("reck_decompose: matrix is not unitary");
  const int n = static_cast<int>(u.rows());

  // Null the strictly lower triangle column by column, bottom-up, with
  // nearest-neighbour layers: L_K^-1 ... L_1^-1 U = D, so U = L_1 ... L_K D.
  CMatrix w = u;
  std::vector<TwoModeLayer> eliminated;
  for (int col = 0; col + 1 < n; ++col) {
    for (int row = n - 1; row > col; --row) {
      const Complex xb = w(row, col);
      if (std::abs(xb) <= kNullThreshold) continue;
      const TwoModeLayer layer = nulling_layer(row - 1, row, w(row - 1, col), xb);
      apply_inverse_rows(w, layer);
      eliminated.push_back(layer);
    }
  }
  Interferometer net(n);
  for (int k = 0; k < n; ++k) net.set_phase(k, phase_of(w(k, k)));
  for (auto it = eliminated.rbegin(); it != eliminated.rend(); ++it) net.add_layer(*it);
  return net;
}

Interferometer prepare_state_network(const CVector& amplitudes, int n, double norm_tol) {
  if (n < 1 || amplitudes.size() != n) throw ContractError("prepare_state_network: expected " + std::to_string(n) + " amplitudes");
  if (std::abs(amplitudes.norm() - 1.0) > norm_tol) throw ContractError("prepare_state_network: amplitudes are not unit norm");
  CMatrix w = amplitudes;
  std::vector<TwoModeLayer> eliminated;
  for (int row = n - 1; row > 0; --row) {
    const Complex xb = w(row, 0);
    if (std::abs(xb) <= kNullThreshold) continue;
    const TwoModeLayer layer = nulling_layer(row - 1, row, w(row - 1, 0), xb);
    apply_inverse_rows(w, layer);
    eliminated.push_back(layer);
  }
  Interferometer net(n);
  net.set_phase(0, phase_of(w(0, 0)));
  for (auto it = eliminated.rbegin(); it != eliminated.rend(); ++it) net.add_layer(*it);
  return net;
}

DiscriminatorNetwork discriminator_network(double omega1) {
  omega1 = checked_omega1(omega1);
  const double omega2 = -omega2_constraint(omega1);
  Interferometer net(3);
  // g_perp meets the vacuum port: the reflected part exits at D1, the rest
  // travels in the F arm and is mixed with h on the second splitter.
  net.add_layer({kModeFail, kModeD1, omega1, 0.0, 0.0});
  net.add_layer({kModeFail, kModeD2, omega2, 0.0, 0.0});
  CMatrix u3 = net.unitary();
  return {std::move(net), std::move(u3), omega2};
}

CVector discriminator_input_g() {
  CVector v(3);
  v << std::sqrt(3.0) / 2.0, -0.5, 0.0;
  return v;
}

CVector discriminator_input_h() {
  CVector v(3);
  v << 0.0, 1.0, 0.0;
  return v;
}

ClickProbabilities discriminator_probabilities(double omega1) {
  const auto disc = discriminator_network(omega1);
  const CVector out_g = disc.u3 * discriminator_input_g();
  const CVector out_h = disc.u3 * discriminator_input_h();
  ClickProbabilities p{};
  for (int k = 0; k < 3; ++k) {
    p.given_g[static_cast<std::size_t>(k)] = std::norm(out_g(k));
    p.given_h[static_cast<std::size_t>(k)] = std::norm(out_h(k));
  }
  return p;
}

std::vector<double> output_distribution(const Interferometer& net, const CVector& input) {
  if (input.size() != net.num_modes()) throw ContractError("output_distribution: input dimension does not match mode count");
  const CVector out = net.unitary() * input;
  std::vector<double> p(static_cast<std::size_t>(out.size()));
  for (Eigen::Index k = 0; k < out.size(); ++k) p[static_cast<std::size_t>(k)] = std::norm(out(k));
  return p;
}

std::size_t sample_index(const std::vector<double>& probabilities, double u) {
  double total = 0.0;
  for (double p : probabilities) total += p;
  double acc = 0.0;
  const double target = u * total;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k] <= 0.0) continue;
    last_nonzero = k;
    acc += probabilities[k];
    if (target < acc) return k;
  }
  return last_nonzero;
}

ClickStats simulate_clicks(const Interferometer& net, const StateVector& input, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw DomainError("simulate_clicks: shots must be >= 1");
  if (input.size() != static_cast<std::size_t>(net.num_modes()))
    throw ContractError("simulate_clicks: input dimension does not match mode count");
  const auto probs = output_distribution(net, input.amplitudes());
  constexpr std::size_t chunk = 4096;
  const std::size_t chunks = static_cast<std::size_t>((shots + chunk - 1) / chunk);
  std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(probs.size(), 0));
  detail::for_each_chunk(static_cast<std::size_t>(shots), chunk, [&](std::size_t begin, std::size_t end, std::size_t c) {
    for (std::size_t s = begin; s < end; ++s) ++partial[c][sample_index(probs, counter_uniform(seed, s))];
  });
  ClickStats stats;
  stats.shots = shots;
  stats.seed = seed;
  stats.counts.assign(probs.size(), 0);
  for (const auto& p : partial)
    for (std::size_t k = 0; k < p.size(); ++k) stats.counts[k] += p[k];
  return stats;
}

}  // namespace qudisc

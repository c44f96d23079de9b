#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "proca/detector/polarization.hpp"
#include "proca/fock/modes.hpp"
#include "json.hpp"

namespace proca::det {

using fock::ModeGrid;
using fock::ModeState;
using fock::ScalarModeState;
using lat::pi;

class PhaseAliasing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// exp(1 - 1/(1 - x^2)) on |x| < 1, zero outside. Smooth, peak 1 at x = 0.
inline double smooth_window(double x) {
  if (std::abs(x) >= 1) return 0;
  return std::exp(1 - 1 / (1 - x * x));
}

// Mode amplitude s(k) supported in {| |k| - k0 | < wk, alpha < alpha_max}, with an optional Gaussian core
// (width 0 disables it) and the focus phase exp(i (omega t_c + k.x_c)) that centres the packet on the detector.
struct ModeProfile {
  double mass = 1;
  double k0 = 1;
  double radial_half_width = 0.4;
  double alpha_max = 0.1;
  double sigma_k = 0;
  double sigma_alpha = 0;
  double focus_t = 0;
  std::array<double, 3> focus_x{0, 0, 0};

  void validate() const {
    if (!(mass > 0)) throw std::invalid_argument("ModeProfile: mass must be positive");
    if (!(k0 > 0)) throw std::invalid_argument("ModeProfile: k0 must be positive");
    if (!(radial_half_width > 0 && radial_half_width < k0)) {
      throw std::invalid_argument("ModeProfile: radial half-width must lie in (0, k0)");
    }
    if (!(alpha_max > 0 && alpha_max < pi / 2)) throw std::invalid_argument("ModeProfile: alpha_max must lie in (0, pi/2)");
    if (sigma_k < 0 || sigma_alpha < 0) throw std::invalid_argument("ModeProfile: negative Gaussian width");
  }

  double alpha(const std::array<double, 3>& k) const { return std::atan2(std::hypot(k[0], k[1]), k[2]); }

  // Real envelope; the support cone is closed under alpha < alpha_max.
  double envelope(const std::array<double, 3>& k) const {
    const double r = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    const double a = alpha(k);
    double v = smooth_window((r - k0) / radial_half_width) * smooth_window(a / alpha_max);
    if (v == 0) return 0;
    if (sigma_k > 0) v *= std::exp(-0.5 * std::pow((r - k0) / sigma_k, 2));
    if (sigma_alpha > 0) v *= std::exp(-0.5 * std::pow(a / sigma_alpha, 2));
    return v;
  }

  cplx amplitude(const std::array<double, 3>& k) const {
    const double e = envelope(k);
    if (e == 0) return 0;
    const double w = fock::omega(mass, k);
    return std::polar(e, w * focus_t + k[0] * focus_x[0] + k[1] * focus_x[1] + k[2] * focus_x[2]);
  }

  // Bounding box of the support: lo/hi per axis.
  std::array<std::array<double, 2>, 3> support_box() const {
    const double kt = (k0 + radial_half_width) * std::sin(alpha_max);
    return {{{-kt, kt}, {-kt, kt}, {(k0 - radial_half_width) * std::cos(alpha_max), k0 + radial_half_width}}};
  }

  // Uniform box grid on the support box; s vanishes on its faces.
  ModeGrid box_grid(const std::array<int, 3>& count) const {
    validate();
    const auto b = support_box();
    return ModeGrid::box({b[0][0], b[1][0], b[2][0]}, {b[0][1], b[1][1], b[2][1]}, count);
  }

  // s sampled on `grid` and normalised in the discrete (2 pi)^-3 d^3k measure.
  ScalarModeState sample(const ModeGrid& grid) const {
    validate();
    grid.validate();
    ScalarModeState s(grid, mass);
    for (std::size_t i = 0; i < grid.size(); ++i) s.values[i] = amplitude(grid.k(i));
    const double n2 = fock::norm2(s);
    if (!(n2 > 0)) throw std::invalid_argument("ModeProfile::sample: grid misses the support of s");
    for (auto& v : s.values) v /= std::sqrt(n2);
    return s;
  }

  nlohmann::json to_json() const {
    return {{"mass", mass},       {"k0", k0},           {"radial_half_width", radial_half_width},
            {"alpha_max", alpha_max}, {"sigma_k", sigma_k}, {"sigma_alpha", sigma_alpha},
            {"focus_t", focus_t}, {"focus_x", focus_x}};
  }
};

struct StateBuild {
  ScalarModeState s;         // normalised profile
  ModeState S;               // normalised s epsilon
  double collimation_norm2;  // ||s epsilon||^2 before normalisation
};

// S = ||s eps||^-1 s eps with eps = sigma_x eps^x + sigma_y eps^y.
inline StateBuild build_state(const ModeProfile& profile, const PolarizationQubit& sigma, const ModeGrid& grid) {
  StateBuild b{profile.sample(grid), ModeState(grid, profile.mass), 0};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx s = b.s.values[i];
    if (s == cplx(0)) continue;
    const C4 e = polarization_covector(sigma, grid.k(i));
    for (int a = 0; a < 4; ++a) b.S.values[i][a] = s * e[a];
  }
  b.collimation_norm2 = fock::norm2(b.S);
  b.S *= 1.0 / std::sqrt(b.collimation_norm2);
  return b;
}

// Resolution budget for oscillatory mode sums.
struct GridBudget {
  double points_per_period = 3;
  int min_nodes_per_axis = 40;
  std::size_t max_nodes = 4'000'000;
};

// phi_e(k) = -(omega e^0 + k.e_vec); d phi / d k_i = -(e^0 k_i / omega + e^i).
inline std::array<double, 3> phase_gradient(double mass, const std::array<double, 4>& e, const std::array<double, 3>& k) {
  const double w = fock::omega(mass, k);
  return {-(e[0] * k[0] / w + e[1]), -(e[0] * k[1] / w + e[2]), -(e[0] * k[2] / w + e[3])};
}

// Box grid fine enough that exp(-i delta phi_e) times the integrand keeps `points_per_period` nodes per period
// for all delta <= delta_max. `intrinsic` bounds |d/dk_i| of the integrand's own phase.
inline ModeGrid displacement_grid(const ModeProfile& p, const std::array<double, 4>& e, double delta_max,
                                  const std::array<double, 3>& intrinsic, const GridBudget& budget = {}) {
  p.validate();
  if (!(delta_max >= 0)) throw std::invalid_argument("displacement_grid: delta_max must be >= 0");
  const auto box = p.support_box();
  // Largest |grad phi| on the support, scanned on a coarse lattice of the box.
  std::array<double, 3> gmax{0, 0, 0};
  const int scan = 41;
  for (int a = 0; a < scan; ++a) {
    for (int b = 0; b < scan; ++b) {
      for (int c = 0; c < scan; ++c) {
        const std::array<double, 3> k{box[0][0] + (box[0][1] - box[0][0]) * a / (scan - 1),
                                      box[1][0] + (box[1][1] - box[1][0]) * b / (scan - 1),
                                      box[2][0] + (box[2][1] - box[2][0]) * c / (scan - 1)};
        if (p.envelope(k) == 0) continue;
        const auto g = phase_gradient(p.mass, e, k);
        for (int d = 0; d < 3; ++d) gmax[d] = std::max(gmax[d], std::abs(g[d]));
      }
    }
  }
  std::array<int, 3> count{};
  double total = 1;
  for (int d = 0; d < 3; ++d) {
    const double extent = box[d][1] - box[d][0];
    const double rate = delta_max * gmax[d] + intrinsic[d];
    double h = extent / budget.min_nodes_per_axis;
    if (rate > 0) h = std::min(h, 2 * pi / (budget.points_per_period * rate));
    count[d] = static_cast<int>(std::ceil(extent / h)) + 1;
    total *= count[d];
  }
  if (total > static_cast<double>(budget.max_nodes)) {
    throw PhaseAliasing("displacement_grid: resolving delta_max = " + std::to_string(delta_max) + " needs " +
                        std::to_string(static_cast<long long>(total)) + " nodes, budget " +
                        std::to_string(budget.max_nodes));
  }
  return ModeGrid::box({box[0][0], box[1][0], box[2][0]}, {box[0][1], box[1][1], box[2][1]}, count);
}

}  // namespace proca::det

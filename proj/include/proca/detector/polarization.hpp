#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "proca/fock/modes.hpp"

namespace proca::det {

using cplx = std::complex<double>;
using fock::C4;

class DegenerateAngle : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Normalised sigma in C^2, coefficients of the x and y polarization covectors.
class PolarizationQubit {
 public:
  PolarizationQubit(cplx sx, cplx sy, double tol = 1e-12) : s_{sx, sy} {
    const double n = std::norm(sx) + std::norm(sy);
    if (!(std::abs(n - 1) <= tol)) throw std::invalid_argument("PolarizationQubit: |sx|^2 + |sy|^2 must be 1");
  }

  static PolarizationQubit linear(double eta) { return {std::cos(eta), std::sin(eta)}; }
  // handedness +1 or -1: 2^{-1/2} (1, +-i)
  static PolarizationQubit circular(int handedness) {
    if (handedness != 1 && handedness != -1) throw std::invalid_argument("PolarizationQubit::circular: +1 or -1");
    return {std::sqrt(0.5), cplx(0, handedness * std::sqrt(0.5))};
  }

  cplx x() const { return s_[0]; }
  cplx y() const { return s_[1]; }

  // sigma_x cos(theta) + sigma_y sin(theta)
  cplx along(double theta) const { return s_[0] * std::cos(theta) + s_[1] * std::sin(theta); }

 private:
  std::array<cplx, 2> s_;
};

// tan(alpha) (cos beta, sin beta) = (k1, k2) / k3; undefined once alpha reaches pi/2.
inline std::array<double, 2> tilt(const std::array<double, 3>& k) {
  if (!(k[2] > 0)) throw DegenerateAngle("polarization covector: k3 <= 0, tan(alpha) diverges");
  return {k[0] / k[2], k[1] / k[2]};
}

// (0, 1, 0, -tan a cos b) and (0, 0, 1, -tan a sin b): vanishing t component, transversal to (omega, k).
inline C4 epsilon_x(const std::array<double, 3>& k) { return {0, 1, 0, -tilt(k)[0]}; }
inline C4 epsilon_y(const std::array<double, 3>& k) { return {0, 0, 1, -tilt(k)[1]}; }

inline C4 polarization_covector(const PolarizationQubit& s, const std::array<double, 3>& k) {
  const auto t = tilt(k);
  return {0, s.x(), s.y(), -(s.x() * t[0] + s.y() * t[1])};
}

// Coupling direction u_theta = (0, cos theta, sin theta, 0).
inline C4 coupling_direction(double theta) { return {0, std::cos(theta), std::sin(theta), 0}; }

}  // namespace proca::det

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "proca/lattice/grid.hpp"
#include "proca/symforms/form.hpp"
#include "proca/symforms/ops.hpp"

namespace proca::lat {

// b(t) = (1 - s^2)^p for |s| < 1, s = (t - center)/half_width; C^{p-1} at the edges.
struct TimeBump {
  double center = 6;
  double half_width = 3;
  int power = 8;

  double lo() const { return center - half_width; }
  double hi() const { return center + half_width; }

  // n-th time derivative.
  double operator()(double t, int n = 0) const {
    const double s = (t - center) / half_width;
    if (std::abs(s) >= 1) return 0;
    // (1 - s^2)^p = sum_j C(p, j) (-1)^j s^{2j}
    double v = 0;
    double binom = 1;
    for (int j = 0; j <= power; ++j) {
      const int e = 2 * j;
      if (e >= n) {
        double falling = 1;
        for (int r = 0; r < n; ++r) falling *= e - r;
        v += ((j % 2) ? -binom : binom) * falling * std::pow(s, e - n);
      }
      binom = binom * (power - j) / (j + 1);
    }
    return v / std::pow(half_width, n);
  }

  bool operator<(const TimeBump& o) const {
    if (center != o.center) return center < o.center;
    if (half_width != o.half_width) return half_width < o.half_width;
    return power < o.power;
  }
  bool operator==(const TimeBump& o) const {
    return center == o.center && half_width == o.half_width && power == o.power;
  }
};

using ModeIndex = std::array<int, 3>;
// Finite Fourier sum  sum_n c_n exp(i k_n . x),  k_n = 2 pi n / L.
using SpatialSeries = std::map<ModeIndex, cplx>;

// One component term  (d/dt)^tderiv b(t) * S(x) * dx^mask.
struct AnalyticTerm {
  sym::IndexMask mask = 0;
  TimeBump bump;
  int tderiv = 0;
  SpatialSeries spatial;
};

// p-form whose components are finite sums of bump x trigonometric-polynomial products.
// Derivatives are exact, so sources built from these need no numerical differentiation.
class AnalyticField {
 public:
  AnalyticField() = default;
  AnalyticField(int degree, double L) : degree_(degree), L_(L) {}

  int degree() const { return degree_; }
  double L() const { return L_; }
  const std::vector<AnalyticTerm>& terms() const { return terms_; }

  void add_term(AnalyticTerm t) {
    if (sym::mask_size(t.mask) != degree_) throw DegreeMismatch("AnalyticField: term mask has wrong degree");
    for (auto& e : terms_) {
      if (e.mask == t.mask && e.bump == t.bump && e.tderiv == t.tderiv) {
        for (const auto& [n, c] : t.spatial) e.spatial[n] += c;
        return;
      }
    }
    terms_.push_back(std::move(t));
  }

  AnalyticField& operator+=(const AnalyticField& o) {
    require_same(o);
    for (const auto& t : o.terms_) add_term(t);
    return *this;
  }
  AnalyticField& operator*=(cplx s) {
    for (auto& t : terms_) {
      for (auto& [n, c] : t.spatial) c *= s;
    }
    return *this;
  }

  double k(int n) const { return 2 * pi * n / L_; }

  // Partial derivative along coordinate mu (0 = t).
  AnalyticField partial(int mu) const {
    AnalyticField r(degree_, L_);
    for (auto t : terms_) {
      if (mu == 0) {
        ++t.tderiv;
      } else {
        for (auto& [n, c] : t.spatial) c *= cplx(0, k(n[static_cast<std::size_t>(mu - 1)]));
      }
      r.add_term(std::move(t));
    }
    return r;
  }

  cplx eval(int comp, double t, double x, double y, double z) const {
    const sym::IndexMask m = sym::basis(degree_)[static_cast<std::size_t>(comp)];
    cplx v = 0;
    for (const auto& term : terms_) {
      if (term.mask != m) continue;
      const double b = term.bump(t, term.tderiv);
      if (b == 0) continue;
      cplx s = 0;
      for (const auto& [n, c] : term.spatial) s += c * std::exp(cplx(0, k(n[0]) * x + k(n[1]) * y + k(n[2]) * z));
      v += b * s;
    }
    return v;
  }

  // Sample onto the lattice; the box side must match.
  LatticeField sample(const Grid& g) const {
    if (std::abs(g.L - L_) > 1e-12 * L_) throw std::invalid_argument("AnalyticField::sample: box side mismatch");
    LatticeField f(g, degree_);
    const std::size_t n3 = g.spatial();
    std::vector<cplx> pattern(n3);
    for (const auto& term : terms_) {
      // Spatial pattern via per-axis exponential tables.
      std::fill(pattern.begin(), pattern.end(), cplx(0));
      for (const auto& [n, c] : term.spatial) {
        if (c == cplx(0)) continue;
        std::array<std::vector<cplx>, 3> e;
        for (int a = 0; a < 3; ++a) {
          e[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(g.N));
          for (int i = 0; i < g.N; ++i) {
            e[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] =
                std::exp(cplx(0, k(n[static_cast<std::size_t>(a)]) * g.x(i)));
          }
        }
        std::size_t p = 0;
        for (int ix = 0; ix < g.N; ++ix) {
          const cplx cx = c * e[0][static_cast<std::size_t>(ix)];
          for (int iy = 0; iy < g.N; ++iy) {
            const cplx cxy = cx * e[1][static_cast<std::size_t>(iy)];
            for (int iz = 0; iz < g.N; ++iz) pattern[p++] += cxy * e[2][static_cast<std::size_t>(iz)];
          }
        }
      }
      const int comp = sym::basis_index(term.mask);
      for (int it = 0; it < g.Nt; ++it) {
        const double b = term.bump(g.t(it), term.tderiv);
        if (b == 0) continue;
        cplx* s = f.slice(comp, it);
        for (std::size_t q = 0; q < n3; ++q) s[q] += b * pattern[q];
      }
    }
    return f;
  }

  // Earliest and latest time at which some term can be nonzero.
  std::pair<double, double> time_support() const {
    double lo = 1e300, hi = -1e300;
    for (const auto& t : terms_) {
      lo = std::min(lo, t.bump.lo());
      hi = std::max(hi, t.bump.hi());
    }
    return {lo, hi};
  }

  // Largest |n_j| over all spatial modes.
  int bandwidth() const {
    int b = 0;
    for (const auto& t : terms_) {
      for (const auto& [n, c] : t.spatial) {
        for (int v : n) b = std::max(b, std::abs(v));
      }
    }
    return b;
  }

  void require_same(const AnalyticField& o) const {
    if (o.degree_ != degree_ || o.L_ != L_) throw DegreeMismatch("AnalyticField: degree or box mismatch");
  }

 private:
  int degree_ = 0;
  double L_ = 4 * pi;
  std::vector<AnalyticTerm> terms_;
};

inline AnalyticField operator+(AnalyticField a, const AnalyticField& b) { return a += b; }
inline AnalyticField operator-(AnalyticField a, AnalyticField b) { return a += (b *= -1.0); }
inline AnalyticField operator*(cplx s, AnalyticField a) { return a *= s; }

// Exterior derivative: d(f dx^I) = sum_mu d_mu f dx^mu ^ dx^I.
inline AnalyticField d(const AnalyticField& w) {
  AnalyticField r(w.degree() + 1, w.L());
  if (w.degree() >= 4) return r;
  for (int mu = 0; mu < 4; ++mu) {
    const auto bit = static_cast<sym::IndexMask>(1u << mu);
    AnalyticField dm = w.partial(mu);
    for (auto t : dm.terms()) {
      const int s = sym::merge_sign(bit, t.mask);
      if (s == 0) continue;
      t.mask = static_cast<sym::IndexMask>(t.mask | bit);
      if (s < 0) {
        for (auto& [n, c] : t.spatial) c = -c;
      }
      r.add_term(std::move(t));
    }
  }
  return r;
}

// Codifferential (delta w)_J = -d^b w_{bJ}; zero on 0-forms.
inline AnalyticField codiff(const AnalyticField& w) {
  AnalyticField r(std::max(w.degree() - 1, 0), w.L());
  if (w.degree() == 0) return r;
  for (int b = 0; b < 4; ++b) {
    const auto bit = static_cast<sym::IndexMask>(1u << b);
    AnalyticField db = w.partial(b);
    for (auto t : db.terms()) {
      if (!(t.mask & bit)) continue;
      const auto J = static_cast<sym::IndexMask>(t.mask & ~bit);
      // w_{bJ} = merge_sign(b, J) w_{b u J}; the overall factor is -eta^{bb}.
      const double s = -sym::eta(b) * sym::merge_sign(bit, J);
      t.mask = J;
      for (auto& [n, c] : t.spatial) c *= s;
      r.add_term(std::move(t));
    }
  }
  return r;
}

// 1D raised cosine ((1 + cos(2 pi (x - x0)/L))/2)^p as a Fourier series with modes |n| <= p.
inline std::vector<std::pair<int, cplx>> raised_cosine_series(int p, double x0, double L) {
  std::vector<std::pair<int, cplx>> s;
  double binom = 1;  // C(2p, j)
  const double norm = std::pow(4.0, -p);
  for (int j = 0; j <= 2 * p; ++j) {
    const int n = j - p;
    s.emplace_back(n, norm * binom * std::exp(cplx(0, -2 * pi * n * x0 / L)));
    binom = binom * (2 * p - j) / (j + 1);
  }
  return s;
}

// Separable spatial bump centred at x0 with per-axis raised-cosine power p.
inline SpatialSeries spatial_bump(const std::array<double, 3>& x0, int p, double L) {
  auto sx = raised_cosine_series(p, x0[0], L);
  auto sy = raised_cosine_series(p, x0[1], L);
  auto sz = raised_cosine_series(p, x0[2], L);
  SpatialSeries s;
  for (const auto& [nx, cx] : sx) {
    for (const auto& [ny, cy] : sy) {
      for (const auto& [nz, cz] : sz) s[{nx, ny, nz}] = cx * cy * cz;
    }
  }
  return s;
}

// Single-mode spatial factor exp(i k_n . x).
inline SpatialSeries plane_wave(const ModeIndex& n, cplx amp = 1.0) { return SpatialSeries{{n, amp}}; }

// Scalar multiple of a fixed profile placed on one component: amp * b(t) S(x) dx^mask.
inline AnalyticField bump_form(int degree, double L, sym::IndexMask mask, const TimeBump& b, const SpatialSeries& s,
                               cplx amp = 1.0) {
  AnalyticField f(degree, L);
  AnalyticTerm t{mask, b, 0, s};
  for (auto& [n, c] : t.spatial) c *= amp;
  f.add_term(std::move(t));
  return f;
}

}  // namespace proca::lat

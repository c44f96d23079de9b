#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "proca/lattice/grid.hpp"
#include "proca/util/parallel.hpp"

namespace proca::fock {

using cplx = std::complex<double>;
using C4 = std::array<cplx, 4>;
using lat::pi;

class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Tensor-product set of spatial covectors k = (k1, k2, k3) with one quadrature weight per node,
// standing in for the measure (2 pi)^-3 d^3k.
struct ModeGrid {
  std::array<std::vector<double>, 3> axes;
  double weight = 0;

  std::size_t size() const { return axes[0].size() * axes[1].size() * axes[2].size(); }
  std::size_t index(std::size_t a, std::size_t b, std::size_t c) const {
    return (a * axes[1].size() + b) * axes[2].size() + c;
  }
  std::array<double, 3> k(std::size_t i) const {
    const std::size_t n2 = axes[1].size(), n3 = axes[2].size();
    return {axes[0][i / (n2 * n3)], axes[1][(i / n3) % n2], axes[2][i % n3]};
  }

  void validate() const {
    if (!(weight > 0)) throw std::invalid_argument("ModeGrid: weight must be positive");
    for (const auto& a : axes) {
      if (a.empty()) throw std::invalid_argument("ModeGrid: empty axis");
    }
  }

  bool operator==(const ModeGrid& o) const { return axes == o.axes && weight == o.weight; }

  // All modes of the periodic lattice; the weight L^-3 is (2 pi)^-3 times the mode cell volume.
  static ModeGrid lattice(const lat::Grid& g) {
    ModeGrid m;
    for (auto& a : m.axes) {
      for (int i = 0; i < g.N; ++i) a.push_back(g.k(i));
    }
    m.weight = 1.0 / (g.L * g.L * g.L);
    return m;
  }

  // Uniform nodes lo + j h, j = 0..count-1, on each axis. Integrands are expected to vanish at the box faces.
  static ModeGrid box(const std::array<double, 3>& lo, const std::array<double, 3>& hi, const std::array<int, 3>& count) {
    ModeGrid m;
    double vol = 1;
    for (int d = 0; d < 3; ++d) {
      if (count[d] < 2 || !(hi[d] > lo[d])) throw std::invalid_argument("ModeGrid::box: need hi > lo and count >= 2");
      const double h = (hi[d] - lo[d]) / (count[d] - 1);
      for (int j = 0; j < count[d]; ++j) m.axes[d].push_back(lo[d] + j * h);
      vol *= h;
    }
    m.weight = vol / std::pow(2 * pi, 3);
    return m;
  }

  double spacing(int d) const { return axes[d].size() > 1 ? std::abs(axes[d][1] - axes[d][0]) : 0.0; }
};

inline double omega(double mass, const std::array<double, 3>& k) {
  return std::sqrt(mass * mass + k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
}

// -eta^{-1}(conj(u), v) with eta = diag(+,-,-,-).
inline cplx pairing(const C4& u, const C4& v) {
  return -std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1] + std::conj(u[2]) * v[2] + std::conj(u[3]) * v[3];
}

struct ModeState {
  ModeGrid grid;
  double mass = 1;
  std::vector<C4> values;

  ModeState() = default;
  ModeState(ModeGrid g, double m) : grid(std::move(g)), mass(m), values(grid.size(), C4{}) {}

  C4 k_lower(std::size_t i) const {
    auto k = grid.k(i);
    return {omega(mass, k), k[0], k[1], k[2]};
  }
  ModeState& operator*=(cplx s) {
    for (auto& v : values) {
      for (auto& c : v) c *= s;
    }
    return *this;
  }
};

struct ScalarModeState {
  ModeGrid grid;
  double mass = 1;
  std::vector<cplx> values;

  ScalarModeState() = default;
  ScalarModeState(ModeGrid g, double m) : grid(std::move(g)), mass(m), values(grid.size(), 0.0) {}
};

template <class State>
void require_compatible(const State& u, const State& v, const char* who) {
  if (!(u.grid == v.grid)) throw GridMismatch(std::string(who) + ": mode grids differ");
  if (u.mass != v.mass) throw GridMismatch(std::string(who) + ": masses differ");
}

inline cplx inner(const ModeState& u, const ModeState& v) {
  require_compatible(u, v, "inner");
  cplx s = 0;
  for (std::size_t i = 0; i < u.values.size(); ++i) s += pairing(u.values[i], v.values[i]);
  return u.grid.weight * s;
}

inline cplx inner(const ScalarModeState& u, const ScalarModeState& v) {
  require_compatible(u, v, "inner");
  cplx s = 0;
  for (std::size_t i = 0; i < u.values.size(); ++i) s += std::conj(u.values[i]) * v.values[i];
  return u.grid.weight * s;
}

template <class State>
double norm2(const State& u) {
  return inner(u, u).real();
}

// Largest |eta^{-1}(v, k)| / (|v| |k|) over populated modes, with Euclidean norms on C^4 and R^4.
inline double transversality_defect(const ModeState& u) {
  double worst = 0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const C4& v = u.values[i];
    const C4 k = u.k_lower(i);
    double nv = 0, nk = 0;
    for (int a = 0; a < 4; ++a) {
      nv += std::norm(v[a]);
      nk += std::norm(k[a]);
    }
    if (nv == 0) continue;
    const cplx d = k[0] * v[0] - k[1] * v[1] - k[2] * v[2] - k[3] * v[3];
    worst = std::max(worst, std::abs(d) / std::sqrt(nv * nk));
  }
  return worst;
}

// Pi_mu^nu v_nu = v_mu - m^-2 k_mu k^nu v_nu on the shell k_0 = omega.
inline C4 project_transverse(const C4& v, const C4& k, double mass) {
  const cplx kv = k[0] * v[0] - k[1] * v[1] - k[2] * v[2] - k[3] * v[3];
  C4 out;
  for (int a = 0; a < 4; ++a) out[a] = v[a] - kv * k[a] / (mass * mass);
  return out;
}

namespace detail {

// Spatial positions of the lattice sites in the centred cell [-L/2, L/2).
inline std::vector<double> centred_positions(const lat::Grid& g) {
  std::vector<double> x(static_cast<std::size_t>(g.N));
  for (int j = 0; j < g.N; ++j) x[static_cast<std::size_t>(j)] = g.mode(j) * g.dx();
  return x;
}

// out[a][j] = exp(i k_a x_j)
inline std::vector<cplx> phase_table(const std::vector<double>& k, const std::vector<double>& x) {
  std::vector<cplx> t(k.size() * x.size());
  for (std::size_t a = 0; a < k.size(); ++a) {
    for (std::size_t j = 0; j < x.size(); ++j) t[a * x.size() + j] = std::polar(1.0, k[a] * x[j]);
  }
  return t;
}

}  // namespace detail

// Cell sum  dV sum_x exp(i k.x) g(x)  of one time slice at every node of `modes`.
// Separable over the three axes; on the lattice grid it reproduces the spatial transform.
class CellTransform {
 public:
  CellTransform(const lat::Grid& g, const ModeGrid& modes) : g_(g), modes_(modes) {
    const auto x = detail::centred_positions(g);
    for (int d = 0; d < 3; ++d) tables_[d] = detail::phase_table(modes.axes[d], x);
  }

  void apply(const cplx* slice, std::vector<cplx>& out) const {
    const std::size_t N = static_cast<std::size_t>(g_.N);
    const std::size_t M1 = modes_.axes[0].size(), M2 = modes_.axes[1].size(), M3 = modes_.axes[2].size();
    std::vector<cplx> t1(N * N * M3), t2(N * M2 * M3);
    parallel_for(N * N, g_.workers, [&](std::size_t xy) {
      const cplx* row = slice + xy * N;
      for (std::size_t c = 0; c < M3; ++c) {
        const cplx* e = &tables_[2][c * N];
        cplx s = 0;
        for (std::size_t z = 0; z < N; ++z) s += e[z] * row[z];
        t1[xy * M3 + c] = s;
      }
    });
    parallel_for(N, g_.workers, [&](std::size_t x) {
      for (std::size_t b = 0; b < M2; ++b) {
        const cplx* e = &tables_[1][b * N];
        cplx* dst = &t2[(x * M2 + b) * M3];
        std::fill(dst, dst + M3, cplx(0));
        for (std::size_t y = 0; y < N; ++y) {
          const cplx* src = &t1[(x * N + y) * M3];
          for (std::size_t c = 0; c < M3; ++c) dst[c] += e[y] * src[c];
        }
      }
    });
    out.assign(M1 * M2 * M3, 0.0);
    const double dV = g_.cell_volume();
    parallel_for(M1, g_.workers, [&](std::size_t a) {
      const cplx* e = &tables_[0][a * N];
      cplx* dst = &out[a * M2 * M3];
      for (std::size_t x = 0; x < N; ++x) {
        const cplx ex = e[x] * dV;
        const cplx* src = &t2[x * M2 * M3];
        for (std::size_t bc = 0; bc < M2 * M3; ++bc) dst[bc] += ex * src[bc];
      }
    });
  }

 private:
  lat::Grid g_;
  ModeGrid modes_;
  std::array<std::vector<cplx>, 3> tables_;
};

// hat f(omega(k), k) = int dt d^3x exp(i (omega t + k.x)) f, per component, by the trapezoid rule in time
// on the lattice and the cell sum in space. Returns one vector per component.
inline std::vector<std::vector<cplx>> mass_shell_transform(const lat::LatticeField& f, double mass,
                                                           const ModeGrid& modes) {
  modes.validate();
  const lat::Grid& g = f.grid();
  const std::size_t M = modes.size();
  std::vector<std::vector<cplx>> acc(static_cast<std::size_t>(f.components()), std::vector<cplx>(M, 0.0));
  const auto [lo, hi] = f.time_support();
  if (lo < 0) return acc;
  CellTransform ct(g, modes);
  std::vector<bool> live(static_cast<std::size_t>(f.components()));
  for (int c = 0; c < f.components(); ++c) {
    const cplx* p = f.component(c);
    live[static_cast<std::size_t>(c)] = std::any_of(p, p + g.points(), [](const cplx& v) { return v != cplx(0); });
  }
  std::vector<double> w(M);
  for (std::size_t i = 0; i < M; ++i) w[i] = omega(mass, modes.k(i));
  std::vector<cplx> phase(M), step(M), slice;
  for (std::size_t i = 0; i < M; ++i) step[i] = std::polar(1.0, w[i] * g.dt());
  for (int it = lo; it <= hi; ++it) {
    // Re-seed the phase recurrence periodically to bound drift.
    if ((it - lo) % 64 == 0) {
      for (std::size_t i = 0; i < M; ++i) phase[i] = std::polar(1.0, w[i] * g.t(it));
    }
    const double wt = (it == 0 || it == g.Nt - 1) ? 0.5 * g.dt() : g.dt();
    for (int c = 0; c < f.components(); ++c) {
      if (!live[static_cast<std::size_t>(c)]) continue;
      ct.apply(f.slice(c, it), slice);
      auto& a = acc[static_cast<std::size_t>(c)];
      for (std::size_t i = 0; i < M; ++i) a[i] += wt * phase[i] * slice[i];
    }
    for (std::size_t i = 0; i < M; ++i) phase[i] *= step[i];
  }
  return acc;
}

// (K f)_mu(k) = (2 omega)^{-1/2} Pi_mu^nu hat f_nu(omega, k).
inline ModeState kmap(const lat::LatticeField& f, double mass, const ModeGrid& modes) {
  if (f.degree() != 1) throw lat::DegreeMismatch("kmap: expects a 1-form");
  if (!(mass > 0)) throw std::invalid_argument("kmap: mass must be positive");
  f.require_interior_support("kmap");
  auto hat = mass_shell_transform(f, mass, modes);
  ModeState out(modes, mass);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const C4 k = out.k_lower(i);
    const C4 v{hat[0][i], hat[1][i], hat[2][i], hat[3][i]};
    C4 p = project_transverse(v, k, mass);
    const double s = 1.0 / std::sqrt(2 * k[0].real());
    for (auto& c : p) c *= s;
    out.values[i] = p;
  }
  return out;
}

inline ScalarModeState kmap_scalar(const lat::LatticeField& h, double mass, const ModeGrid& modes) {
  if (h.degree() != 0) throw lat::DegreeMismatch("kmap_scalar: expects a 0-form");
  if (!(mass > 0)) throw std::invalid_argument("kmap_scalar: mass must be positive");
  h.require_interior_support("kmap_scalar");
  auto hat = mass_shell_transform(h, mass, modes);
  ScalarModeState out(modes, mass);
  for (std::size_t i = 0; i < modes.size(); ++i) out.values[i] = hat[0][i] / std::sqrt(2 * omega(mass, modes.k(i)));
  return out;
}

inline void write_csv(const ModeState& u, std::ostream& os) {
  os << "k1,k2,k3,re0,im0,re1,im1,re2,im2,re3,im3\n" << std::setprecision(17);
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    auto k = u.grid.k(i);
    os << k[0] << ',' << k[1] << ',' << k[2];
    for (const auto& c : u.values[i]) os << ',' << c.real() << ',' << c.imag();
    os << '\n';
  }
}

}  // namespace proca::fock

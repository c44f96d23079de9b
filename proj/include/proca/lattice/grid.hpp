#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <stdexcept>
#include <string>
#include <vector>

#include "proca/symforms/form.hpp"

namespace proca::lat {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

class SupportViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegreeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Time interval [0, T] x spatial 3-torus of side L.
struct Grid {
  double L = 4 * pi;
  int N = 16;
  double T = 12;
  int Nt = 400;
  double t_pad = 0.5;  // sources must vanish on [0, t_pad) and (T - t_pad, T]
  int workers = 1;

  double dt() const { return T / (Nt - 1); }
  double dx() const { return L / N; }
  double cell_volume() const { return dx() * dx() * dx(); }
  std::size_t spatial() const { return static_cast<std::size_t>(N) * N * N; }
  std::size_t points() const { return spatial() * static_cast<std::size_t>(Nt); }
  double t(int i) const { return i * dt(); }
  double x(int i) const { return i * dx(); }
  // Signed mode number of FFT index i.
  int mode(int i) const { return i < N / 2 ? i : i - N; }
  double k(int i) const { return 2 * pi * mode(i) / L; }

  void validate() const {
    if (N < 2 || N % 2 != 0) throw std::invalid_argument("Grid: N must be even and >= 2");
    if (Nt < 8) throw std::invalid_argument("Grid: Nt must be >= 8");
    if (!(L > 0) || !(T > 0)) throw std::invalid_argument("Grid: L and T must be positive");
    if (t_pad < 0 || 2 * t_pad >= T) throw std::invalid_argument("Grid: bad t_pad");
  }

  bool same_lattice(const Grid& o) const { return L == o.L && N == o.N && T == o.T && Nt == o.Nt; }

  // Time index range [first, last] strictly inside the pads.
  int first_interior() const { return static_cast<int>(std::ceil(t_pad / dt() - 1e-9)); }
  int last_interior() const { return static_cast<int>(std::floor((T - t_pad) / dt() + 1e-9)); }
};

inline int num_components(int degree) { return degree < 0 ? 0 : sym::num_components(degree); }

// Complex p-form sampled on the grid, layout [component][t][x][y][z].
class LatticeField {
 public:
  LatticeField() = default;
  LatticeField(const Grid& g, int degree)
      : grid_(g), degree_(degree), data_(static_cast<std::size_t>(num_components(degree)) * g.points()) {}

  const Grid& grid() const { return grid_; }
  int degree() const { return degree_; }
  int components() const { return num_components(degree_); }
  std::size_t size() const { return data_.size(); }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  cplx* component(int c) { return data_.data() + static_cast<std::size_t>(c) * grid_.points(); }
  const cplx* component(int c) const { return data_.data() + static_cast<std::size_t>(c) * grid_.points(); }
  cplx* slice(int c, int it) { return component(c) + static_cast<std::size_t>(it) * grid_.spatial(); }
  const cplx* slice(int c, int it) const { return component(c) + static_cast<std::size_t>(it) * grid_.spatial(); }

  std::size_t index(int c, int it, int ix, int iy, int iz) const {
    const std::size_t n = static_cast<std::size_t>(grid_.N);
    return ((static_cast<std::size_t>(c) * grid_.Nt + it) * n + ix) * n * n + static_cast<std::size_t>(iy) * n + iz;
  }
  cplx& at(int c, int it, int ix, int iy, int iz) { return data_[index(c, it, ix, iy, iz)]; }
  const cplx& at(int c, int it, int ix, int iy, int iz) const { return data_[index(c, it, ix, iy, iz)]; }

  LatticeField& operator+=(const LatticeField& o) {
    check(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  LatticeField& operator-=(const LatticeField& o) {
    check(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  LatticeField& operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  // this += s * o
  LatticeField& axpy(cplx s, const LatticeField& o) {
    check(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * o.data_[i];
    return *this;
  }

  // Discrete L2 norm with the spacetime cell measure.
  double norm() const { return std::sqrt(norm2_range(0, grid_.Nt - 1)); }
  // Norm restricted to time indices [i0, i1].
  double norm_range(int i0, int i1) const { return std::sqrt(norm2_range(i0, i1)); }
  double norm_interior() const { return norm_range(grid_.first_interior(), grid_.last_interior()); }

  double max_abs() const {
    double m = 0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  double max_abs_range(int i0, int i1) const {
    double m = 0;
    for (int c = 0; c < components(); ++c) {
      for (int it = std::max(i0, 0); it <= std::min(i1, grid_.Nt - 1); ++it) {
        const cplx* s = slice(c, it);
        for (std::size_t p = 0; p < grid_.spatial(); ++p) m = std::max(m, std::abs(s[p]));
      }
    }
    return m;
  }

  // First and last time index with a nonzero sample, or (-1, -1) for the zero field.
  std::pair<int, int> time_support(double threshold = 0) const {
    int lo = -1, hi = -1;
    for (int it = 0; it < grid_.Nt; ++it) {
      bool nz = false;
      for (int c = 0; c < components() && !nz; ++c) {
        const cplx* s = slice(c, it);
        for (std::size_t p = 0; p < grid_.spatial(); ++p) {
          if (std::abs(s[p]) > threshold) {
            nz = true;
            break;
          }
        }
      }
      if (nz) {
        if (lo < 0) lo = it;
        hi = it;
      }
    }
    return {lo, hi};
  }

  void require_interior_support(const std::string& who) const {
    const double tol = 1e-14 * max_abs();
    const double left = max_abs_range(0, grid_.first_interior() - 1);
    const double right = max_abs_range(grid_.last_interior() + 1, grid_.Nt - 1);
    if (left > tol || right > tol) throw SupportViolation(who + ": source touches the time boundary pad");
  }

  void check(const LatticeField& o) const {
    if (o.degree_ != degree_ || !o.grid_.same_lattice(grid_)) {
      throw DegreeMismatch("LatticeField: degree or grid mismatch (" + std::to_string(degree_) + " vs " +
                           std::to_string(o.degree_) + ")");
    }
  }

 private:
  double norm2_range(int i0, int i1) const {
    double s = 0;
    for (int c = 0; c < components(); ++c) {
      for (int it = std::max(i0, 0); it <= std::min(i1, grid_.Nt - 1); ++it) {
        const cplx* p = slice(c, it);
        for (std::size_t q = 0; q < grid_.spatial(); ++q) s += std::norm(p[q]);
      }
    }
    return s * grid_.cell_volume() * grid_.dt();
  }

  Grid grid_{};
  int degree_ = 0;
  std::vector<cplx> data_;
};

inline LatticeField operator+(LatticeField a, const LatticeField& b) { return a += b; }
inline LatticeField operator-(LatticeField a, const LatticeField& b) { return a -= b; }
inline LatticeField operator*(cplx s, LatticeField a) { return a *= s; }

// Pointwise complex conjugate.
inline LatticeField conj(LatticeField a) {
  for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] = std::conj(a.data()[i]);
  return a;
}

inline std::string component_order(int degree) {
  std::string s;
  for (auto m : sym::basis(degree)) {
    if (!s.empty()) s += ",";
    s += sym::mask_name(m);
  }
  return s.empty() ? "1" : s;
}

// Flat binary snapshot: text header line, then little-endian complex64 pairs in storage order.
inline void write_binary(const LatticeField& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_binary: cannot open " + path);
  const Grid& g = f.grid();
  os << std::setprecision(17) << "proca-lattice v1 degree=" << f.degree() << " Nt=" << g.Nt << " N=" << g.N
     << " L=" << g.L << " T=" << g.T << " components=" << component_order(f.degree()) << "\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    float v[2] = {static_cast<float>(f.data()[i].real()), static_cast<float>(f.data()[i].imag())};
    unsigned char b[8];
    for (int h = 0; h < 2; ++h) {
      std::uint32_t u;
      std::memcpy(&u, &v[h], 4);
      for (int k = 0; k < 4; ++k) b[4 * h + k] = static_cast<unsigned char>((u >> (8 * k)) & 0xFFu);
    }
    os.write(reinterpret_cast<const char*>(b), 8);
  }
}

// CSV slice at a fixed time index.
inline void write_csv_slice(const LatticeField& f, int it, std::ostream& os) {
  const Grid& g = f.grid();
  os << "x,y,z";
  for (int c = 0; c < f.components(); ++c) os << ",re_" << c << ",im_" << c;
  os << "\n" << std::setprecision(17);
  for (int ix = 0; ix < g.N; ++ix) {
    for (int iy = 0; iy < g.N; ++iy) {
      for (int iz = 0; iz < g.N; ++iz) {
        os << g.x(ix) << "," << g.x(iy) << "," << g.x(iz);
        for (int c = 0; c < f.components(); ++c) {
          const cplx v = f.at(c, it, ix, iy, iz);
          os << "," << v.real() << "," << v.imag();
        }
        os << "\n";
      }
    }
  }
}

}  // namespace proca::lat

#pragma once

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

#include "proca/lattice/grid.hpp"
#include "proca/util/parallel.hpp"

namespace proca::lat {

// Spatial transform f~(k) = dV sum_x e^{i k.x} f(x) (FFTW backward sign) and its inverse
// f(x) = L^{-3} sum_k e^{-i k.x} f~(k). Under this pairing d/dx_j acts as -i k_j.
class SpatialFFT {
 public:
  static const SpatialFFT& get(int N) {
    static std::mutex mu;
    static std::map<int, SpatialFFT*> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(N);
    if (it == cache.end()) it = cache.emplace(N, new SpatialFFT(N)).first;
    return *it->second;
  }

  // In place on one N^3 slice; unnormalized.
  void exec_plus(cplx* s) const { fftw_execute_dft(plus_, reinterpret_cast<fftw_complex*>(s), reinterpret_cast<fftw_complex*>(s)); }
  void exec_minus(cplx* s) const { fftw_execute_dft(minus_, reinterpret_cast<fftw_complex*>(s), reinterpret_cast<fftw_complex*>(s)); }

 private:
  explicit SpatialFFT(int N) {
    std::vector<cplx> buf(static_cast<std::size_t>(N) * N * N);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plus_ = fftw_plan_dft_3d(N, N, N, p, p, FFTW_BACKWARD, flags);
    minus_ = fftw_plan_dft_3d(N, N, N, p, p, FFTW_FORWARD, flags);
  }
  fftw_plan plus_ = nullptr;
  fftw_plan minus_ = nullptr;
};

// Position space -> mode space, slice by slice.
inline void to_modes(LatticeField& f) {
  const Grid& g = f.grid();
  const auto& fft = SpatialFFT::get(g.N);
  const double dv = g.cell_volume();
  const std::size_t slices = static_cast<std::size_t>(f.components()) * g.Nt;
  parallel_for(slices, g.workers, [&](std::size_t s) {
    cplx* p = f.data() + s * g.spatial();
    fft.exec_plus(p);
    for (std::size_t q = 0; q < g.spatial(); ++q) p[q] *= dv;
  });
}

inline void from_modes(LatticeField& f) {
  const Grid& g = f.grid();
  const auto& fft = SpatialFFT::get(g.N);
  const double inv = 1.0 / (g.L * g.L * g.L);
  const std::size_t slices = static_cast<std::size_t>(f.components()) * g.Nt;
  parallel_for(slices, g.workers, [&](std::size_t s) {
    cplx* p = f.data() + s * g.spatial();
    fft.exec_minus(p);
    for (std::size_t q = 0; q < g.spatial(); ++q) p[q] *= inv;
  });
}

// Mode covector components (k_x, k_y, k_z) of flat mode index q.
inline std::array<double, 3> mode_k(const Grid& g, std::size_t q) {
  const std::size_t n = static_cast<std::size_t>(g.N);
  return {g.k(static_cast<int>(q / (n * n))), g.k(static_cast<int>((q / n) % n)), g.k(static_cast<int>(q % n))};
}

}  // namespace proca::lat

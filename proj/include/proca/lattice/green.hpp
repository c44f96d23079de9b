#pragma once

#include <cmath>
#include <string>

#include "proca/lattice/analytic.hpp"
#include "proca/lattice/fft.hpp"
#include "proca/lattice/form_ops.hpp"

namespace proca::lat {

enum class Orientation { retarded, advanced };

inline std::string to_string(Orientation o) { return o == Orientation::retarded ? "retarded" : "advanced"; }

namespace detail {

// Retarded Duhamel integral u(t_i) = int_0^{t_i} sin(w (t_i - s))/w f(s) ds for one mode.
// Composite trapezoid on the cumulative integrals int cos(ws) f, int sin(ws) f, plus the
// Euler-Maclaurin endpoint terms at s = t_i through h^4 (the s = 0 end lies in the pad).
inline void duhamel_series(const cplx* f, cplx* u, int Nt, double h, double w, std::vector<cplx>& f2) {
  f2.resize(static_cast<std::size_t>(Nt));
  fd::apply_series(f, f2.data(), Nt, 1, h, 2);
  cplx C = 0, S = 0;
  cplx prev_c = 0, prev_s = 0;
  const double h2 = h * h, h4 = h2 * h2;
  for (int i = 0; i < Nt; ++i) {
    const double t = i * h;
    const double c = std::cos(w * t), s = std::sin(w * t);
    const cplx fc = c * f[i], fs = s * f[i];
    if (i > 0) {
      C += 0.5 * h * (prev_c + fc);
      S += 0.5 * h * (prev_s + fs);
    }
    prev_c = fc;
    prev_s = fs;
    u[i] = (s * C - c * S) / w + h2 * f[i] / 12.0 - h4 / 720.0 * (3.0 * f2[static_cast<std::size_t>(i)] - w * w * f[i]);
  }
}

}  // namespace detail

// Retarded or advanced Green operator of d_t^2 - Laplacian + m^2, componentwise on any degree.
// Exact per spatial mode; the only approximation is the time quadrature.
inline LatticeField kg_green(const LatticeField& f, double mass, Orientation o) {
  if (!(mass > 0)) throw std::invalid_argument("kg_green: mass must be positive");
  f.require_interior_support("kg_green");
  const Grid& g = f.grid();
  LatticeField r = f;
  to_modes(r);
  const std::size_t n3 = g.spatial();
  const int Nt = g.Nt;
  const double h = g.dt();
  const bool adv = o == Orientation::advanced;
  for (int c = 0; c < r.components(); ++c) {
    cplx* base = r.component(c);
    parallel_for(n3, g.workers, [&](std::size_t q) {
      auto k = mode_k(g, q);
      const double w = std::sqrt(mass * mass + k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
      std::vector<cplx> in(static_cast<std::size_t>(Nt)), out(static_cast<std::size_t>(Nt)), f2;
      // Advanced = time reversal of retarded: E^-(f)(t) = E^+(f(T - .))(T - t).
      for (int i = 0; i < Nt; ++i) in[static_cast<std::size_t>(adv ? Nt - 1 - i : i)] = base[static_cast<std::size_t>(i) * n3 + q];
      detail::duhamel_series(in.data(), out.data(), Nt, h, w, f2);
      for (int i = 0; i < Nt; ++i) base[static_cast<std::size_t>(i) * n3 + q] = out[static_cast<std::size_t>(adv ? Nt - 1 - i : i)];
    });
  }
  from_modes(r);
  return r;
}

// Proca Green operator E_K(id - m^{-2} d delta) on a lattice source (delta and d by finite differences).
inline LatticeField proca_green(const LatticeField& J, double mass, Orientation o) {
  if (J.degree() != 1) throw DegreeMismatch("proca_green: source must be a 1-form");
  LatticeField g = J;
  g.axpy(-1.0 / (mass * mass), d(codiff(J)));
  return kg_green(g, mass, o);
}

// Same, with d delta J evaluated exactly on the analytic source before sampling.
inline LatticeField proca_green(const AnalyticField& J, const Grid& grid, double mass, Orientation o) {
  if (J.degree() != 1) throw DegreeMismatch("proca_green: source must be a 1-form");
  AnalyticField g = J - (1.0 / (mass * mass)) * d(codiff(J));
  return kg_green(g.sample(grid), mass, o);
}

// Proca operator -delta d + m^2 on 1-forms.
inline LatticeField proca_operator(const LatticeField& W, double mass) {
  LatticeField r = codiff(d(W));
  r *= -1.0;
  r.axpy(mass * mass, W);
  return r;
}

// Relative residual ||a - b|| / ||b|| over the interior time window.
inline double relative_residual(const LatticeField& a, const LatticeField& b) {
  const double ref = b.norm_interior();
  LatticeField diff = a - b;
  return ref > 0 ? diff.norm_interior() / ref : diff.norm_interior();
}

}  // namespace proca::lat

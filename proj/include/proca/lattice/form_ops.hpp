#pragma once

#include <array>
#include <string>

#include "proca/lattice/fft.hpp"
#include "proca/lattice/grid.hpp"
#include "proca/symforms/ops.hpp"

namespace proca::lat {

namespace fd {

// Fourth-order time stencils; rows give (first offset, coefficients). One-sided near the ends.
struct Stencil {
  int offset;
  std::vector<double> c;
};

inline Stencil first_derivative(int i, int Nt) {
  if (i == 0) return {0, {-25, 48, -36, 16, -3}};
  if (i == 1) return {-1, {-3, -10, 18, -6, 1}};
  if (i == Nt - 2) return {-3, {-1, 6, -18, 10, 3}};
  if (i == Nt - 1) return {-4, {3, -16, 36, -48, 25}};
  return {-2, {1, -8, 0, 8, -1}};
}

inline Stencil second_derivative(int i, int Nt) {
  if (i == 0) return {0, {45, -154, 214, -156, 61, -10}};
  if (i == 1) return {-1, {10, -15, -4, 14, -6, 1}};
  if (i == Nt - 2) return {-4, {1, -6, 14, -4, -15, 10}};
  if (i == Nt - 1) return {-5, {-10, 61, -156, 214, -154, 45}};
  return {-2, {-1, 16, -30, 16, -1}};
}

// d^order/dt^order of a single time series with stride.
inline void apply_series(const cplx* in, cplx* out, int Nt, std::size_t stride, double h, int order) {
  const double scale = order == 1 ? 1.0 / (12 * h) : 1.0 / (12 * h * h);
  for (int i = 0; i < Nt; ++i) {
    Stencil s = order == 1 ? first_derivative(i, Nt) : second_derivative(i, Nt);
    cplx acc = 0;
    for (std::size_t j = 0; j < s.c.size(); ++j) {
      acc += s.c[j] * in[static_cast<std::size_t>(i + s.offset + static_cast<int>(j)) * stride];
    }
    out[static_cast<std::size_t>(i) * stride] = scale * acc;
  }
}

}  // namespace fd

// Time derivative of the given order (1 or 2), fourth order in dt.
inline LatticeField time_derivative(const LatticeField& f, int order = 1) {
  if (order != 1 && order != 2) throw std::invalid_argument("time_derivative: order must be 1 or 2");
  const Grid& g = f.grid();
  LatticeField r(g, f.degree());
  const double h = g.dt();
  const std::size_t n3 = g.spatial();
  for (int c = 0; c < f.components(); ++c) {
    const cplx* in = f.component(c);
    cplx* out = r.component(c);
    parallel_for(static_cast<std::size_t>(g.Nt), g.workers, [&](std::size_t it) {
      const int i = static_cast<int>(it);
      fd::Stencil s = order == 1 ? fd::first_derivative(i, g.Nt) : fd::second_derivative(i, g.Nt);
      const double scale = order == 1 ? 1.0 / (12 * h) : 1.0 / (12 * h * h);
      cplx* o = out + it * n3;
      for (std::size_t j = 0; j < s.c.size(); ++j) {
        const double w = scale * s.c[j];
        if (w == 0) continue;
        const cplx* src = in + static_cast<std::size_t>(i + s.offset + static_cast<int>(j)) * n3;
        for (std::size_t q = 0; q < n3; ++q) o[q] += w * src[q];
      }
    });
  }
  return r;
}

// Spatial partial derivative d/dx^j (j = 1..3), spectral: multiplies mode k by -i k_j.
// The Nyquist mode keeps k_j = -pi N / L so that mixed compositions match the Laplacian.
inline LatticeField spatial_derivative(const LatticeField& f, int j) {
  if (j < 1 || j > 3) throw std::invalid_argument("spatial_derivative: axis must be 1..3");
  LatticeField r = f;
  const Grid& g = f.grid();
  to_modes(r);
  const std::size_t n3 = g.spatial();
  std::vector<cplx> factor(n3);
  for (std::size_t q = 0; q < n3; ++q) factor[q] = cplx(0, -mode_k(g, q)[static_cast<std::size_t>(j - 1)]);
  const std::size_t slices = static_cast<std::size_t>(r.components()) * g.Nt;
  parallel_for(slices, g.workers, [&](std::size_t s) {
    cplx* p = r.data() + s * n3;
    for (std::size_t q = 0; q < n3; ++q) p[q] *= factor[q];
  });
  from_modes(r);
  return r;
}

inline LatticeField partial(const LatticeField& f, int mu) {
  return mu == 0 ? time_derivative(f, 1) : spatial_derivative(f, mu);
}

// Spectral Laplacian; equals the square of spatial_derivative on every mode, Nyquist included.
inline LatticeField laplacian(const LatticeField& f) {
  LatticeField r = f;
  const Grid& g = f.grid();
  to_modes(r);
  const std::size_t n3 = g.spatial();
  std::vector<double> k2(n3);
  for (std::size_t q = 0; q < n3; ++q) {
    auto k = mode_k(g, q);
    k2[q] = -(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  }
  const std::size_t slices = static_cast<std::size_t>(r.components()) * g.Nt;
  parallel_for(slices, g.workers, [&](std::size_t s) {
    cplx* p = r.data() + s * n3;
    for (std::size_t q = 0; q < n3; ++q) p[q] *= k2[q];
  });
  from_modes(r);
  return r;
}

// Componentwise Klein-Gordon operator (d_t^2 - Laplacian + m^2) in Cartesian flat coordinates.
inline LatticeField kg_operator(const LatticeField& f, double m2) {
  LatticeField r = time_derivative(f, 2);
  r -= laplacian(f);
  r.axpy(m2, f);
  return r;
}

namespace detail {
// r[rc] += sign * src[sc]
inline void accumulate(LatticeField& r, int rc, const LatticeField& src, int sc, double sign) {
  const Grid& g = src.grid();
  cplx* o = r.component(rc);
  const cplx* in = src.component(sc);
  for (std::size_t i = 0; i < g.points(); ++i) o[i] += sign * in[i];
}
}  // namespace detail

inline LatticeField d(const LatticeField& w) {
  const int p = w.degree();
  LatticeField r(w.grid(), p + 1);
  if (p >= 4) return r;
  const auto& bp = sym::basis(p);
  for (int mu = 0; mu < 4; ++mu) {
    const auto bit = static_cast<sym::IndexMask>(1u << mu);
    LatticeField dm = partial(w, mu);
    for (int c = 0; c < w.components(); ++c) {
      const int s = sym::merge_sign(bit, bp[static_cast<std::size_t>(c)]);
      if (s == 0) continue;
      detail::accumulate(r, sym::basis_index(static_cast<sym::IndexMask>(bp[static_cast<std::size_t>(c)] | bit)), dm,
                         c, s);
    }
  }
  return r;
}

// (delta w)_J = -d^b w_{bJ}; the zero 0-form on 0-forms.
inline LatticeField codiff(const LatticeField& w) {
  const int p = w.degree();
  LatticeField r(w.grid(), std::max(p - 1, 0));
  if (p == 0) return r;
  const auto& bp = sym::basis(p);
  for (int b = 0; b < 4; ++b) {
    const auto bit = static_cast<sym::IndexMask>(1u << b);
    bool needed = false;
    for (auto m : bp) needed = needed || (m & bit);
    if (!needed) continue;
    LatticeField db = partial(w, b);
    for (int c = 0; c < w.components(); ++c) {
      const auto I = bp[static_cast<std::size_t>(c)];
      if (!(I & bit)) continue;
      const auto J = static_cast<sym::IndexMask>(I & ~bit);
      detail::accumulate(r, sym::basis_index(J), db, c, -sym::eta(b) * sym::merge_sign(bit, J));
    }
  }
  return r;
}

// Pointwise a ^ w.
inline LatticeField wedge(const LatticeField& a, const LatticeField& w) {
  if (!a.grid().same_lattice(w.grid())) throw DegreeMismatch("wedge: grid mismatch");
  const int p = a.degree() + w.degree();
  LatticeField r(w.grid(), p);
  if (p > 4) return r;
  const auto& ba = sym::basis(a.degree());
  const auto& bw = sym::basis(w.degree());
  const std::size_t n = w.grid().points();
  for (int i = 0; i < a.components(); ++i) {
    for (int j = 0; j < w.components(); ++j) {
      const auto I = ba[static_cast<std::size_t>(i)];
      const auto J = bw[static_cast<std::size_t>(j)];
      const int s = sym::merge_sign(I, J);
      if (s == 0) continue;
      cplx* o = r.component(sym::basis_index(static_cast<sym::IndexMask>(I | J)));
      const cplx* x = a.component(i);
      const cplx* y = w.component(j);
      for (std::size_t q = 0; q < n; ++q) o[q] += static_cast<double>(s) * x[q] * y[q];
    }
  }
  return r;
}

// Interior product v^a w_{a...} with v a 1-form (index raised with eta).
inline LatticeField interior(const LatticeField& v, const LatticeField& w) {
  if (v.degree() != 1) throw DegreeMismatch("interior: contracting field must be a 1-form");
  const int p = w.degree();
  LatticeField r(w.grid(), std::max(p - 1, 0));
  if (p == 0) return r;
  const auto& bw = sym::basis(p);
  const std::size_t n = w.grid().points();
  for (int c = 0; c < w.components(); ++c) {
    const auto I = bw[static_cast<std::size_t>(c)];
    for (int a = 0; a < 4; ++a) {
      const auto bit = static_cast<sym::IndexMask>(1u << a);
      if (!(I & bit)) continue;
      const auto J = static_cast<sym::IndexMask>(I & ~bit);
      const double s = sym::eta(a) * sym::merge_sign(bit, J);
      cplx* o = r.component(sym::basis_index(J));
      const cplx* x = v.component(a);
      const cplx* y = w.component(c);
      for (std::size_t q = 0; q < n; ++q) o[q] += s * x[q] * y[q];
    }
  }
  return r;
}

// Pointwise multiplication of a p-form by a 0-form.
inline LatticeField multiply(const LatticeField& f, const LatticeField& w) {
  if (f.degree() != 0) throw DegreeMismatch("multiply: first factor must be a 0-form");
  return wedge(f, w);
}

// (F.W)_a = F_a^b W_b.
inline LatticeField F_dot(const LatticeField& F, const LatticeField& W) {
  if (F.degree() != 2 || W.degree() != 1) throw DegreeMismatch("F_dot: expects a 2-form and a 1-form");
  LatticeField r(W.grid(), 1);
  const std::size_t n = W.grid().points();
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      const auto A = static_cast<sym::IndexMask>(1u << a);
      const auto B = static_cast<sym::IndexMask>(1u << b);
      // F_{ab} = merge_sign(a, b) F_{a u b}; raising b contributes eta(b).
      const double s = sym::merge_sign(A, B) * sym::eta(b);
      const cplx* f = F.component(sym::basis_index(static_cast<sym::IndexMask>(A | B)));
      const cplx* w = W.component(b);
      cplx* o = r.component(a);
      for (std::size_t q = 0; q < n; ++q) o[q] += s * f[q] * w[q];
    }
  }
  return r;
}

// F.. H = *^{-1}(F ^ *H) = <F, H> for 2-forms; zero for lower degree.
inline LatticeField F_ddot(const LatticeField& F, const LatticeField& H) {
  if (F.degree() != 2) throw DegreeMismatch("F_ddot: F must be a 2-form");
  if (H.degree() < 2) return LatticeField(H.grid(), 0);
  if (H.degree() != 2) throw DegreeMismatch("F_ddot: only 2-form arguments are supported on the lattice");
  LatticeField r(H.grid(), 0);
  const auto& b = sym::basis(2);
  const std::size_t n = H.grid().points();
  cplx* o = r.component(0);
  for (int i = 0; i < 6; ++i) {
    const double s = sym::basis_pairing(b[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]);
    const cplx* f = F.component(i);
    const cplx* h = H.component(i);
    for (std::size_t q = 0; q < n; ++q) o[q] += s * f[q] * h[q];
  }
  return r;
}

inline LatticeField dA(const LatticeField& w, const LatticeField& A, double q) {
  LatticeField r = d(w);
  if (q != 0) r.axpy(cplx(0, q), wedge(A, w));
  return r;
}

inline LatticeField deltaA(const LatticeField& w, const LatticeField& A, double q) {
  LatticeField r = codiff(w);
  if (q != 0 && w.degree() > 0) r.axpy(cplx(0, -q), interior(A, w));
  return r;
}

// Box_A = -(d_A delta_A + delta_A d_A); on 0-forms only the second term.
inline LatticeField boxA(const LatticeField& w, const LatticeField& A, double q) {
  LatticeField r = deltaA(dA(w, A, q), A, q);
  if (w.degree() > 0) r += dA(deltaA(w, A, q), A, q);
  r *= -1.0;
  return r;
}

// Box_A w - Box w written out term by term, so it vanishes exactly wherever A does:
// -iq [A ^ delta w - d(A.w) + delta(A ^ w) - A.dw] - q^2 [A ^ (A.w) + A.(A ^ w)].
inline LatticeField boxA_minus_box(const LatticeField& w, const LatticeField& A, double q) {
  LatticeField Aw = wedge(A, w);
  LatticeField lin = codiff(Aw);
  lin -= interior(A, d(w));
  LatticeField quad = interior(A, Aw);
  if (w.degree() > 0) {
    LatticeField Adw = interior(A, w);
    lin += wedge(A, codiff(w));
    lin -= d(Adw);
    quad += wedge(A, Adw);
  }
  lin *= cplx(0, -q);
  lin.axpy(-q * q, quad);
  return lin;
}

inline LatticeField box(const LatticeField& w) {
  LatticeField r = codiff(d(w));
  if (w.degree() > 0) r += d(codiff(w));
  r *= -1.0;
  return r;
}

}  // namespace proca::lat

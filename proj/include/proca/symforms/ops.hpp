#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "proca/symforms/form.hpp"

namespace proca::sym {

// Minkowski metric diag(+1,-1,-1,-1); it is its own inverse.
inline int eta(int mu) { return mu == 0 ? 1 : -1; }

// <e_I, e_J> = (1/p!) (e_I)_{a...} (e_J)^{a...} for basis forms.
inline int basis_pairing(IndexMask I, IndexMask J) {
  if (I != J) return 0;
  int s = 1;
  for (int mu = 0; mu < 4; ++mu) {
    if (I & (1u << mu)) s *= eta(mu);
  }
  return s;
}

namespace detail {

using RMatrix = std::vector<std::vector<Rational>>;

inline std::vector<Rational> solve_exact(RMatrix A, std::vector<Rational> b) {
  const std::size_t n = A.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(A[piv][col]) == 0) ++piv;
    if (piv == n) throw std::logic_error("solve_exact: singular system");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(A[r][col]) == 0) continue;
      Rational f = A[r][col] / A[col][col];
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= A[i][i];
  return b;
}

// star[p][J][K]: coefficient of e_K (degree 4-p) in *e_J, obtained by solving
// e_I ^ (*e_J) = <e_I, e_J> vol for every basis e_I of degree p.
struct HodgeTable {
  std::array<RMatrix, 5> star;
  std::array<Rational, 5> square;  // ** = square[p] on p-forms

  HodgeTable() {
    for (int p = 0; p <= 4; ++p) {
      const auto& bp = basis(p);
      const auto& bq = basis(4 - p);
      const std::size_t n = bp.size();
      RMatrix A(n, std::vector<Rational>(n, Rational(0)));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          PolyForm w = wedge(PolyForm::basis_form(bp[i]), PolyForm::basis_form(bq[k]));
          const auto& terms = w[0].terms();
          if (!terms.empty()) A[i][k] = terms.begin()->second.re;
        }
      }
      star[static_cast<std::size_t>(p)].assign(n, std::vector<Rational>(n, Rational(0)));
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> rhs(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) rhs[i] = basis_pairing(bp[i], bp[j]);
        auto x = solve_exact(A, rhs);
        for (std::size_t k = 0; k < n; ++k) star[static_cast<std::size_t>(p)][j][k] = x[k];
      }
    }
    for (int p = 0; p <= 4; ++p) {
      const auto& S1 = star[static_cast<std::size_t>(p)];
      const auto& S2 = star[static_cast<std::size_t>(4 - p)];
      const std::size_t n = S1.size();
      Rational sigma(0);
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = 0; l < n; ++l) {
          Rational acc(0);
          for (std::size_t k = 0; k < n; ++k) acc += S1[j][k] * S2[k][l];
          if (j == 0 && l == 0) sigma = acc;
          if (acc != (j == l ? sigma : Rational(0))) throw std::logic_error("Hodge square is not a multiple of id");
        }
      }
      square[static_cast<std::size_t>(p)] = sigma;
    }
  }
};

inline const HodgeTable& hodge_table() {
  static const HodgeTable t;
  return t;
}

inline PolyForm apply_star(const PolyForm& w, const Rational& scale) {
  const int p = w.degree();
  PolyForm r(4 - p);
  const auto& S = hodge_table().star[static_cast<std::size_t>(p)];
  for (int j = 0; j < w.size(); ++j) {
    if (w[j].is_zero()) continue;
    for (int k = 0; k < r.size(); ++k) {
      const Rational& c = S[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      if (sgn(c) == 0) continue;
      r[k] += w[j] * CRational(c * scale);
    }
  }
  return r;
}

}  // namespace detail

// Sign sigma_p with ** = sigma_p id on p-forms.
inline Rational hodge_square(int p) { return detail::hodge_table().square[static_cast<std::size_t>(p)]; }

inline PolyForm hodge(const PolyForm& w) {
  if (w.degree() > 4) return PolyForm(0);
  return detail::apply_star(w, Rational(1));
}

// Inverse Hodge star on (4-p)-forms: *^{-1} = sigma_p^{-1} *.
inline PolyForm hodge_inv(const PolyForm& w) {
  if (w.degree() > 4) return PolyForm(0);
  return detail::apply_star(w, Rational(1) / hodge_square(4 - w.degree()));
}

inline int parity_sign(int p) { return (p % 2 == 0) ? 1 : -1; }

// Antisymmetric tensor component w_{a J} with a prepended to the increasing tuple J.
inline Poly component_prepend(const PolyForm& w, int a, IndexMask J) {
  IndexMask am = static_cast<IndexMask>(1u << a);
  int s = merge_sign(am, J);
  if (s == 0) return Poly();
  const Poly& c = w.at_mask(static_cast<IndexMask>(am | J));
  return s > 0 ? c : -c;
}

// Contraction v^a w_{a ...}.
inline PolyForm interior(const PolyForm& v, const PolyForm& w) {
  if (v.degree() != 1) throw std::invalid_argument("interior: contracting form must be a 1-form");
  if (w.degree() == 0) return PolyForm(0);
  PolyForm r(w.degree() - 1);
  const auto& b = basis(r.degree());
  for (int j = 0; j < r.size(); ++j) {
    IndexMask J = b[static_cast<std::size_t>(j)];
    for (int a = 0; a < 4; ++a) {
      if (v[a].is_zero()) continue;
      Poly c = component_prepend(w, a, J);
      if (c.is_zero()) continue;
      Poly term = v[a] * c;
      if (eta(a) < 0) term *= CRational(-1);
      r[j] += term;
    }
  }
  return r;
}

// Codifferential through the Hodge star: delta w = (-1)^p *^{-1} d * w.
inline PolyForm codiff(const PolyForm& w) {
  if (w.degree() == 0) return PolyForm(0);
  if (w.degree() > 4) return PolyForm(w.degree() - 1);
  PolyForm r = hodge_inv(d(hodge(w)));
  r *= CRational(parity_sign(w.degree()));
  return r;
}

// Codifferential from the index formula (delta w)_J = -d^b w_{b J}.
inline PolyForm codiff_coord(const PolyForm& w) {
  if (w.degree() == 0) return PolyForm(0);
  if (w.degree() > 4) return PolyForm(w.degree() - 1);
  PolyForm r(w.degree() - 1);
  const auto& b = basis(r.degree());
  for (int j = 0; j < r.size(); ++j) {
    IndexMask J = b[static_cast<std::size_t>(j)];
    for (int beta = 0; beta < 4; ++beta) {
      Poly c = component_prepend(w, beta, J);
      if (c.is_zero()) continue;
      Poly der = c.derivative(beta);
      if (eta(beta) > 0) der *= CRational(-1);
      r[j] += der;
    }
  }
  return r;
}

inline CRational iq(const Rational& q) { return CRational(Rational(0), q); }

inline PolyForm dA(const PolyForm& w, const PolyForm& A, const Rational& q) {
  return d(w) + iq(q) * wedge(A, w);
}

inline PolyForm deltaA(const PolyForm& w, const PolyForm& A, const Rational& q) {
  if (w.degree() == 0) return PolyForm(0);
  if (w.degree() > 4) return PolyForm(w.degree() - 1);
  PolyForm r = hodge_inv(dA(hodge(w), A, q));
  r *= CRational(parity_sign(w.degree()));
  return r;
}

// (delta_A w)_J = -(d^b + iq A^b) w_{b J}.
inline PolyForm deltaA_coord(const PolyForm& w, const PolyForm& A, const Rational& q) {
  return codiff_coord(w) - iq(q) * interior(A, w);
}

// On 0-forms the d delta term is absent.
inline PolyForm box(const PolyForm& w) {
  if (w.degree() == 0) return -codiff(d(w));
  return -(d(codiff(w)) + codiff(d(w)));
}

inline PolyForm boxA(const PolyForm& w, const PolyForm& A, const Rational& q) {
  if (w.degree() == 0) return -deltaA(dA(w, A, q), A, q);
  return -(dA(deltaA(w, A, q), A, q) + deltaA(dA(w, A, q), A, q));
}

// (F.W)_a = F_a^b W_b for a 2-form F and 1-form W.
inline PolyForm F_dot(const PolyForm& F, const PolyForm& W) {
  if (F.degree() != 2 || W.degree() != 1) throw std::invalid_argument("F_dot: expects 2-form and 1-form");
  PolyForm r(1);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (a == b || W[b].is_zero()) continue;
      Poly c = component_prepend(F, a, static_cast<IndexMask>(1u << b));
      if (c.is_zero()) continue;
      Poly term = c * W[b];
      if (eta(b) < 0) term *= CRational(-1);
      r[a] += term;
    }
  }
  return r;
}

// F.. w = *^{-1}(F ^ *w); lowers the degree by two.
inline PolyForm F_ddot(const PolyForm& F, const PolyForm& w) {
  if (w.degree() < 2) return PolyForm(0);
  if (w.degree() > 4) return PolyForm(w.degree() - 2);
  return hodge_inv(wedge(F, hodge(w)));
}

// (1/2) F^{mn} H_{mn} by index contraction, for 2-forms only.
inline PolyForm F_ddot_index(const PolyForm& F, const PolyForm& H) {
  if (F.degree() != 2 || H.degree() != 2) throw std::invalid_argument("F_ddot_index: expects 2-forms");
  PolyForm r(0);
  const auto& b = basis(2);
  for (int i = 0; i < 6; ++i) {
    IndexMask I = b[static_cast<std::size_t>(i)];
    Poly term = F[i] * H[i];
    if (basis_pairing(I, I) < 0) term *= CRational(-1);
    r[0] += term;
  }
  return r;
}

}  // namespace proca::sym

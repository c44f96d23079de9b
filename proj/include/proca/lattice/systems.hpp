#pragma once

#include <string>
#include <vector>

#include "proca/lattice/born.hpp"

namespace proca::lat {

// ---------------------------------------------------------------------------------------------
// Charged Proca field in a background potential A, magnetic-moment parameter kappa.

struct ChargedBackground {
  double q = 0.1;
  double kappa = 1;
  double mass = 1;
  AnalyticField A{1, 4 * pi};
};

class ChargedProca {
 public:
  ChargedProca(const ChargedBackground& b, const Grid& g)
      : q_(b.q), kappa_(b.kappa), m_(b.mass), A_(b.A.sample(g)), F_(d(b.A).sample(g)) {
    j_ = codiff(d(b.A)).sample(g);
    j_ *= -1.0;
  }

  double q() const { return q_; }
  const LatticeField& A() const { return A_; }
  const LatticeField& F() const { return F_; }
  const LatticeField& j() const { return j_; }
  cplx iq() const { return cplx(0, q_); }

  LatticeField KA(const LatticeField& x) const {
    LatticeField r = boxA(x, A_, q_);
    r.axpy(m_ * m_, x);
    return r;
  }

  // P_A W = -delta_A d_A W + iq kappa F.W + m^2 W.
  LatticeField PA(const LatticeField& W) const {
    LatticeField r = deltaA(dA(W, A_, q_), A_, q_);
    r *= -1.0;
    r.axpy(iq() * kappa_, F_dot(F_, W));
    r.axpy(m_ * m_, W);
    return r;
  }

  FieldMap P() const {
    return {"P_A", {1}, {1}, blk::SupportAction::local, [this](const Fields& x) { return Fields{PA(x[0])}; }};
  }

  // D_A = (delta_A, id, d_A).
  FieldMap D() const {
    return {"D_A", {1}, {0, 1, 2}, blk::SupportAction::local, [this](const Fields& x) {
              return Fields{deltaA(x[0], A_, q_), x[0], dA(x[0], A_, q_)};
            }};
  }

  FieldMap pi() const { return blk::projection<LatticeField>({0, 1, 2}, 1, 2); }

  // C_A = [[id, -delta_A, 0], [0, -d_A, id]].
  FieldMap C() const {
    return {"C_A", {0, 1, 2}, {0, 2}, blk::SupportAction::local, [this](const Fields& x) {
              LatticeField c0 = x[0] - deltaA(x[1], A_, q_);
              LatticeField c2 = x[2] - dA(x[1], A_, q_);
              return Fields{c0, c2};
            }};
  }

  // R = (-iq kappa j., iq (1 - kappa) F..) : Lambda^1 + Lambda^2 -> Lambda^0.
  LatticeField R(const LatticeField& W, const LatticeField& H) const {
    LatticeField r = interior(j_, W);
    r *= -iq() * kappa_;
    r.axpy(iq() * (1 - kappa_), F_ddot(F_, H));
    return r;
  }

  // M_A - K with K = -Box + m^2: only terms carrying A, F or j, so it vanishes exactly where they do.
  Fields V(const LatticeField& W, const LatticeField& H) const {
    LatticeField v1 = boxA_minus_box(W, A_, q_);
    v1.axpy(iq() * kappa_, F_dot(F_, W));
    v1.axpy(-1.0 / (m_ * m_), dA(R(W, H), A_, q_));
    LatticeField v2 = deltaA(wedge(F_, W), A_, q_);
    v2 *= iq();
    v2.axpy(iq() * kappa_, dA(F_dot(F_, W), A_, q_));
    v2 += boxA_minus_box(H, A_, q_);
    return {v1, v2};
  }

  // M_A = K + V on (W, H).
  Fields M(const LatticeField& W, const LatticeField& H) const {
    Fields r = V(W, H);
    const double m2 = m_ * m_;
    r[0] -= box(W);
    r[0].axpy(m2, W);
    r[1] -= box(H);
    r[1].axpy(m2, H);
    return r;
  }

  // Lower-right block of Q_A: T = M_A + S m^{-2} R with S = (d_A, 0).
  Fields T(const LatticeField& W, const LatticeField& H) const {
    Fields t = M(W, H);
    t[0].axpy(1.0 / (m_ * m_), dA(R(W, H), A_, q_));
    return t;
  }

  FieldMap M_map() const {
    return {"M_A", {1, 2}, {1, 2}, blk::SupportAction::local, [this](const Fields& x) { return M(x[0], x[1]); }};
  }

  // E_{M_A} by a Born series around the componentwise Klein-Gordon operator of mass m.
  FieldGreen E_M(int order) const {
    FieldGreen E0 = kg_green_pair({1, 2}, {m_, m_});
    FieldMap Vm{"M_A - K", {1, 2}, {1, 2}, blk::SupportAction::local,
                [this](const Fields& x) { return V(x[0], x[1]); }};
    FieldGreen E = born_green(E0, Vm, order);
    E.governed_by = M_map();
    return E;
  }

  // E_Q through the LU factorisation with P-block m^2.
  FieldGreen E_Q(int order) const {
    const double m2 = m_ * m_;
    FieldMap Pb{"m^2", {0}, {0}, blk::SupportAction::local, [m2](const Fields& x) { return blk::tuple::scale(x, m2); }};
    FieldMap Pinv{"m^-2", {0}, {0}, blk::SupportAction::local,
                  [m2](const Fields& x) { return blk::tuple::scale(x, 1.0 / m2); }};
    FieldMap Rm{"R", {1, 2}, {0}, blk::SupportAction::local, [this](const Fields& x) { return Fields{R(x[0], x[1])}; }};
    FieldMap S{"S", {0}, {1, 2}, blk::SupportAction::local, [this](const Fields& x) {
                 return Fields{dA(x[0], A_, q_), LatticeField(x[0].grid(), 2)};
               }};
    FieldMap Tm{"T", {1, 2}, {1, 2}, blk::SupportAction::local, [this](const Fields& x) { return T(x[0], x[1]); }};
    return blk::lu_green(Pb, std::optional<FieldMap>(Pinv), Rm, S, Tm, E_M(order));
  }

  // E_{P_A} = pi E_{Q_A} D_A.
  FieldGreen E_P(int order) const { return blk::assemble_green(pi(), D(), E_Q(order), P()); }

  // Direct formula pi_1 E_{M_A} (id - m^{-2} d_A delta_A, d_A).
  LatticeField E_P_direct(const LatticeField& J, int order, Orientation o) const {
    LatticeField g1 = J;
    g1.axpy(-1.0 / (m_ * m_), dA(deltaA(J, A_, q_), A_, q_));
    FieldGreen E = E_M(order);
    return E.get(o == Orientation::retarded)({g1, dA(J, A_, q_)})[0];
  }

 private:
  double q_, kappa_, m_;
  LatticeField A_, F_, j_;
};

// ---------------------------------------------------------------------------------------------
// Real Proca field W of mass m coupled to a real scalar phi of mass mm through v = lambda v0.

struct ProcaScalarBackground {
  double mass = 1;
  double scalar_mass = 0.7;
  double lambda = 0.1;
  AnalyticField v0{1, 4 * pi};
};

class ProcaScalar {
 public:
  ProcaScalar(const ProcaScalarBackground& b, const Grid& g)
      : m_(b.mass), mm_(b.scalar_mass), v_((b.lambda * b.v0).sample(g)), dv_((b.lambda * codiff(b.v0)).sample(g)) {}

  LatticeField vdot(const LatticeField& W) const { return interior(v_, W); }
  LatticeField vtimes(const LatticeField& phi) const { return multiply(phi, v_); }

  // P (W, phi) = (-delta d W + m^2 W + v phi, -v.W + K_mm phi).
  Fields P(const Fields& x) const {
    LatticeField a = proca_operator(x[0], m_);
    a += vtimes(x[1]);
    LatticeField b = kg_operator(x[1], mm_ * mm_);
    b -= vdot(x[0]);
    return {a, b};
  }

  FieldMap P_map() const {
    return {"P", {1, 0}, {1, 0}, blk::SupportAction::local, [this](const Fields& x) { return P(x); }};
  }

  // Born series around diag(E_Proca, E_K) with V = [[0, v], [-v., 0]].
  FieldGreen E_P(int order) const {
    const double m = m_, mm = mm_;
    auto side = [=](Orientation o) {
      return FieldMap{"E0", {1, 0}, {1, 0}, blk::SupportAction::local, [=](const Fields& x) {
                        return Fields{proca_green(x[0], m, o), kg_green(x[1], mm, o)};
                      }};
    };
    FieldMap V{"V", {1, 0}, {1, 0}, blk::SupportAction::local, [this](const Fields& x) {
                 LatticeField b = vdot(x[0]);
                 b *= -1.0;
                 return Fields{vtimes(x[1]), b};
               }};
    FieldGreen E0{side(Orientation::retarded), side(Orientation::advanced), P_map()};
    FieldGreen E = born_green(E0, V, order);
    E.governed_by = P_map();
    return E;
  }

  // Auxiliary route: Q on (psi, V, W, phi), E_Q by LU with the T block Born-expanded, E_P = pi E_Q D.
  FieldGreen E_P_lu(int order) const {
    const double m2 = m_ * m_;
    FieldMap Pb{"m^2", {0}, {0}, blk::SupportAction::local, [m2](const Fields& x) { return blk::tuple::scale(x, m2); }};
    FieldMap Pinv{"m^-2", {0}, {0}, blk::SupportAction::local,
                  [m2](const Fields& x) { return blk::tuple::scale(x, 1.0 / m2); }};
    // R = (-v., 0, delta v).
    FieldMap R{"R", {1, 1, 0}, {0}, blk::SupportAction::local, [this](const Fields& x) {
                 LatticeField r = vdot(x[0]);
                 r *= -1.0;
                 r += multiply(dv_, x[2]);
                 return Fields{r};
               }};
    // S psi = (0, d psi, 0).
    FieldMap S{"S", {0}, {1, 1, 0}, blk::SupportAction::local, [](const Fields& x) {
                 const Grid& g = x[0].grid();
                 return Fields{LatticeField(g, 1), d(x[0]), LatticeField(g, 0)};
               }};
    // Lower-right block of Q.
    auto T0 = [this](const Fields& x) {
      LatticeField a = kg_operator(x[0], mm_ * mm_);
      a -= d(vdot(x[1]));
      LatticeField b = kg_operator(x[1], m_ * m_);
      b += vtimes(x[2]);
      LatticeField c = kg_operator(x[2], mm_ * mm_);
      c -= vdot(x[1]);
      return Fields{a, b, c};
    };
    FieldMap Tm{"T0", {1, 1, 0}, {1, 1, 0}, blk::SupportAction::local, T0};
    // T = T0 - S m^{-2} R, Born-expanded around diag(K_mm, K_m, K_mm).
    FieldMap Tfull{"T", {1, 1, 0}, {1, 1, 0}, blk::SupportAction::local, [T0, R, S, m2](const Fields& x) {
                     Fields t = T0(x);
                     return blk::tuple::add(t, S(R(x)), -1.0 / m2);
                   }};
    FieldGreen E0 = kg_green_pair({1, 1, 0}, {mm_, m_, mm_});
    FieldMap V = blk::sum(Tfull, E0.governed_by, -1.0);
    FieldGreen ET = born_green(E0, V, order);
    ET.governed_by = Tfull;
    FieldGreen EQ = blk::lu_green(Pb, std::optional<FieldMap>(Pinv), R, S, Tm, ET);
    FieldMap D{"D", {1, 0}, {0, 1, 1, 0}, blk::SupportAction::local,
               [](const Fields& x) { return Fields{codiff(x[0]), d(x[1]), x[0], x[1]}; }};
    FieldMap pi = blk::projection<LatticeField>({0, 1, 1, 0}, 2, 4);
    return blk::assemble_green(pi, D, EQ, P_map());
  }

 private:
  double m_, mm_;
  LatticeField v_, dv_;
};

// ---------------------------------------------------------------------------------------------
// Two complex scalars psi (mass m) and phi (mass mm) with the symmetric coupling lambda rho:
// P (psi, phi) = (K_m psi + lambda rho phi, lambda rho psi + K_mm phi).

struct ScalarPairBackground {
  double mass = 1;
  double scalar_mass = 0.8;
  double lambda = 0.1;
  AnalyticField rho{0, 4 * pi};
};

class ScalarPair {
 public:
  ScalarPair(const ScalarPairBackground& b, const Grid& g)
      : m_(b.mass), mm_(b.scalar_mass), v_((b.lambda * b.rho).sample(g)) {
    if (b.rho.degree() != 0) throw DegreeMismatch("ScalarPair: rho must be a 0-form");
  }

  // V (psi, phi) = (lambda rho phi, lambda rho psi).
  Fields V(const Fields& x) const { return {multiply(v_, x[1]), multiply(v_, x[0])}; }

  Fields P(const Fields& x) const {
    Fields c = V(x);
    c[0] += kg_operator(x[0], m_ * m_);
    c[1] += kg_operator(x[1], mm_ * mm_);
    return c;
  }

  FieldMap P_map() const {
    return {"P", {0, 0}, {0, 0}, blk::SupportAction::local, [this](const Fields& x) { return P(x); }};
  }

  FieldGreen E_P(int order) const {
    FieldMap V{"V", {0, 0}, {0, 0}, blk::SupportAction::local, [this](const Fields& x) { return this->V(x); }};
    FieldGreen E = born_green(kg_green_pair({0, 0}, {m_, mm_}), V, order);
    E.governed_by = P_map();
    return E;
  }

 private:
  double m_, mm_;
  LatticeField v_;
};

// ---------------------------------------------------------------------------------------------
// Proca multiplet with mass matrix rho = m0^2 1_k + drho(x), drho real symmetric and compactly supported.

struct MultipletBackground {
  double m0 = 1;
  std::vector<std::vector<AnalyticField>> drho;  // k x k 0-forms; only i <= j is read
  int k() const { return static_cast<int>(drho.size()); }
};

class ProcaMultiplet {
 public:
  ProcaMultiplet(const MultipletBackground& b, const Grid& g) : k_(b.k()), m0_(b.m0), grid_(g) {
    if (k_ < 1) throw std::invalid_argument("ProcaMultiplet: k must be >= 1");
    drho_.assign(static_cast<std::size_t>(k_ * k_), LatticeField(g, 0));
    rho_ = drho_;
    rinv_ = drho_;
    dr_.assign(static_cast<std::size_t>(k_ * k_), LatticeField(g, 1));
    for (int i = 0; i < k_; ++i) {
      for (int j = 0; j < k_; ++j) {
        const AnalyticField& e = b.drho[static_cast<std::size_t>(std::min(i, j))][static_cast<std::size_t>(std::max(i, j))];
        at(drho_, i, j) = e.sample(g);
        at(dr_, i, j) = d(e).sample(g);
        at(rho_, i, j) = at(drho_, i, j);
        if (i == j) {
          cplx* p = at(rho_, i, j).data();
          for (std::size_t s = 0; s < g.points(); ++s) p[s] += m0_ * m0_;
        }
      }
    }
    invert_pointwise();
  }

  int k() const { return k_; }

  // Pointwise matrix-vector product (M x)_i = sum_j M_ij x_j on forms.
  Fields apply(const std::vector<LatticeField>& M, const Fields& x) const {
    Fields y;
    for (int i = 0; i < k_; ++i) {
      LatticeField s(grid_, x[0].degree());
      for (int j = 0; j < k_; ++j) s += multiply(at(M, i, j), x[static_cast<std::size_t>(j)]);
      y.push_back(std::move(s));
    }
    return y;
  }

  // ((d rho). W)_i = sum_j (d rho_ij).W_j.
  Fields drho_dot(const Fields& W) const {
    Fields y;
    for (int i = 0; i < k_; ++i) {
      LatticeField s(grid_, 0);
      for (int j = 0; j < k_; ++j) s += interior(at(dr_, i, j), W[static_cast<std::size_t>(j)]);
      y.push_back(std::move(s));
    }
    return y;
  }

  // P W = -delta d W + rho W.
  Fields P(const Fields& W) const {
    Fields r = apply(rho_, W);
    for (int i = 0; i < k_; ++i) r[static_cast<std::size_t>(i)] -= codiff(d(W[static_cast<std::size_t>(i)]));
    return r;
  }

  // Constraint rho delta W - (d rho).W - delta J.
  Fields constraint(const Fields& W, const Fields& J) const {
    Fields dW, dJ;
    for (int i = 0; i < k_; ++i) {
      dW.push_back(codiff(W[static_cast<std::size_t>(i)]));
      dJ.push_back(codiff(J[static_cast<std::size_t>(i)]));
    }
    Fields r = apply(rho_, dW);
    Fields t = drho_dot(W);
    for (int i = 0; i < k_; ++i) {
      r[static_cast<std::size_t>(i)] -= t[static_cast<std::size_t>(i)];
      r[static_cast<std::size_t>(i)] -= dJ[static_cast<std::size_t>(i)];
    }
    return r;
  }

  std::vector<int> degrees() const { return std::vector<int>(static_cast<std::size_t>(k_), 1); }

  FieldMap P_map() const {
    return {"P", degrees(), degrees(), blk::SupportAction::local, [this](const Fields& x) { return P(x); }};
  }

  // E_R by Born around box + m0^2, V = drho + d rho^{-1} (d rho).
  FieldGreen E_R(int order) const {
    FieldGreen E0 = kg_green_pair(degrees(), std::vector<double>(static_cast<std::size_t>(k_), m0_));
    FieldMap V{"V", degrees(), degrees(), blk::SupportAction::local, [this](const Fields& x) {
                 Fields r = apply(drho_, x);
                 Fields s = apply(rinv_, drho_dot(x));
                 for (int i = 0; i < k_; ++i) r[static_cast<std::size_t>(i)] += d(s[static_cast<std::size_t>(i)]);
                 return r;
               }};
    return born_green(E0, V, order);
  }

  // E_P = E_R (id - d rho^{-1} delta).
  FieldGreen E_P(int order) const {
    FieldGreen ER = E_R(order);
    FieldMap pre{"id - d rho^-1 delta", degrees(), degrees(), blk::SupportAction::local, [this](const Fields& x) {
                   Fields dx;
                   for (const auto& f : x) dx.push_back(codiff(f));
                   Fields s = apply(rinv_, dx);
                   Fields r = x;
                   for (int i = 0; i < k_; ++i) r[static_cast<std::size_t>(i)] -= d(s[static_cast<std::size_t>(i)]);
                   return r;
                 }};
    FieldGreen E{blk::compose(ER.retarded, pre), blk::compose(ER.advanced, pre), P_map()};
    E.retarded.support = blk::SupportAction::future_directed;
    E.advanced.support = blk::SupportAction::past_directed;
    return E;
  }

 private:
  LatticeField& at(std::vector<LatticeField>& M, int i, int j) const {
    return M[static_cast<std::size_t>(i * k_ + j)];
  }
  const LatticeField& at(const std::vector<LatticeField>& M, int i, int j) const {
    return M[static_cast<std::size_t>(i * k_ + j)];
  }

  // Gauss-Jordan per lattice point; rho is positive definite so no pivoting is needed.
  void invert_pointwise() {
    const std::size_t n = static_cast<std::size_t>(k_);
    std::vector<cplx> a(n * n), inv(n * n);
    for (std::size_t s = 0; s < grid_.points(); ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          a[i * n + j] = at(rho_, static_cast<int>(i), static_cast<int>(j)).data()[s];
          inv[i * n + j] = i == j ? 1.0 : 0.0;
        }
      }
      for (std::size_t c = 0; c < n; ++c) {
        const cplx p = a[c * n + c];
        if (std::abs(p) == 0) throw std::domain_error("ProcaMultiplet: singular mass matrix");
        for (std::size_t j = 0; j < n; ++j) {
          a[c * n + j] /= p;
          inv[c * n + j] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
          if (r == c) continue;
          const cplx f = a[r * n + c];
          for (std::size_t j = 0; j < n; ++j) {
            a[r * n + j] -= f * a[c * n + j];
            inv[r * n + j] -= f * inv[c * n + j];
          }
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) at(rinv_, static_cast<int>(i), static_cast<int>(j)).data()[s] = inv[i * n + j];
      }
    }
  }

  int k_;
  double m0_;
  Grid grid_;
  std::vector<LatticeField> drho_, rho_, rinv_, dr_;
};

}  // namespace proca::lat

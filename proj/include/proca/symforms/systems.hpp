#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "proca/symforms/blockop.hpp"
#include "proca/symforms/random.hpp"

namespace proca::sym {

enum class SystemTag { neutral, neutral_alt, multiplet, charged, proca_scalar };

inline std::string to_string(SystemTag t) {
  switch (t) {
    case SystemTag::neutral: return "neutral";
    case SystemTag::neutral_alt: return "neutral-alt";
    case SystemTag::multiplet: return "multiplet";
    case SystemTag::charged: return "charged";
    case SystemTag::proca_scalar: return "proca-scalar";
  }
  return "unknown";
}

inline SystemTag system_from_string(const std::string& s) {
  for (SystemTag t : {SystemTag::neutral, SystemTag::neutral_alt, SystemTag::multiplet, SystemTag::charged,
                      SystemTag::proca_scalar}) {
    if (to_string(t) == s) return t;
  }
  throw std::invalid_argument("unknown system tag: " + s);
}

// Random coefficients and background fields shared by all structure systems.
struct Background {
  Rational q = 1;
  Rational kappa = 0;
  Rational m2 = 1;   // Proca mass squared
  Rational mm2 = 1;  // scalar mass squared
  PolyForm A{1};
  PolyForm v{1};
  std::vector<std::vector<Poly>> rho;  // symmetric k x k

  PolyForm F() const { return d(A); }
  PolyForm j() const { return -codiff(F()); }
};

inline Background random_background(std::mt19937_64& rng, const SectionSampler& s, int k = 1) {
  Background b;
  auto nonzero = [&] {
    Rational r;
    do r = s.rational(rng);
    while (sgn(r) == 0);
    return r;
  };
  b.q = nonzero();
  b.kappa = s.rational(rng);
  b.m2 = nonzero();
  b.mm2 = nonzero();
  b.A = s.form(rng, 1, true);
  b.v = s.form(rng, 1, true);
  b.rho.assign(static_cast<std::size_t>(k), std::vector<Poly>(static_cast<std::size_t>(k)));
  for (int a = 0; a < k; ++a) {
    for (int c = a; c < k; ++c) {
      Poly p = s.poly(rng, true);
      b.rho[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] = p;
      b.rho[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)] = p;
    }
  }
  return b;
}

// lhs == rhs as operators on the given domain.
struct BlockIdentity {
  std::string name;
  SymBlockOp lhs;
  SymBlockOp rhs;
};

// Operators entering the abstract auxiliary-field theorem.
struct StructureSystem {
  std::string name;
  SymBlockOp P, Q, D, pi, C, N, iota_aux;
  bool pi_iota_vanishes = false;
  std::vector<BlockIdentity> extra;
};

inline std::vector<BlockIdentity> structure_identities(const StructureSystem& s) {
  std::vector<BlockIdentity> out;
  out.push_back({s.name + ": pi D = id", s.pi * s.D, SymBlockOp::identity(s.P.in_degrees())});
  out.push_back({s.name + ": D pi + iota_aux C = id", s.D * s.pi + s.iota_aux * s.C,
                 SymBlockOp::identity(s.Q.in_degrees())});
  out.push_back({s.name + ": C D = 0", s.C * s.D, SymBlockOp(s.C.out_degrees(), s.D.in_degrees())});
  out.push_back({s.name + ": pi Q D = P", s.pi * s.Q * s.D, s.P});
  out.push_back({s.name + ": C Q = N C", s.C * s.Q, s.N * s.C});
  if (s.pi_iota_vanishes) {
    out.push_back({s.name + ": pi iota_aux = 0", s.pi * s.iota_aux,
                   SymBlockOp(s.pi.out_degrees(), s.iota_aux.in_degrees())});
  }
  for (const auto& e : s.extra) out.push_back(e);
  return out;
}

namespace detail {

// Q = L U with P_blk = c (a constant in slot 0), L = [[1,0],[S/c,1]], U = [[c,R],[0,W]].
inline BlockIdentity lu_identity(const std::string& name, const SymBlockOp& Q, const Rational& c,
                                 const SymBlockOp& W_block) {
  const auto& deg = Q.in_degrees();
  const std::size_t n = deg.size();
  SymBlockOp L = SymBlockOp::identity(deg);
  SymBlockOp U(deg, deg);
  U.set(0, 0, ops::scalar(CRational(c), deg[0], "c"));
  for (std::size_t i = 1; i < n; ++i) {
    if (Q.at(i, 0)) L.set(i, 0, ops::scaled(inverse(CRational(c)), *Q.at(i, 0)));
    if (Q.at(0, i)) U.set(0, i, *Q.at(0, i));
    for (std::size_t j = 1; j < n; ++j) {
      if (W_block.at(i - 1, j - 1)) U.set(i, j, *W_block.at(i - 1, j - 1));
    }
  }
  return {name, Q, L * U};
}

}  // namespace detail

inline StructureSystem neutral_system(const Background& b) {
  using namespace ops;
  StructureSystem s;
  s.name = "neutral";
  s.P = SymBlockOp({1}, {1});
  s.P.set(0, 0, sum(scaled(CRational(-1), compose(codiff(2), ext_d(1))), scalar(CRational(b.m2), 1)));
  s.Q = SymBlockOp({0, 1}, {0, 1});
  s.Q.set(0, 0, scalar(CRational(b.m2), 0)).set(1, 0, ext_d(0)).set(1, 1, klein_gordon(b.m2, 1));
  s.D = SymBlockOp({0, 1}, {1});
  s.D.set(0, 0, codiff(1)).set(1, 0, identity(1));
  s.pi = SymBlockOp({1}, {0, 1});
  s.pi.set(0, 1, identity(1));
  s.C = SymBlockOp({0}, {0, 1});
  s.C.set(0, 0, identity(0)).set(0, 1, scaled(CRational(-1), codiff(1)));
  s.N = SymBlockOp({0}, {0});
  s.N.set(0, 0, klein_gordon(b.m2, 0));
  s.iota_aux = SymBlockOp({0, 1}, {0});
  s.iota_aux.set(0, 0, identity(0));
  s.pi_iota_vanishes = true;
  SymBlockOp Wb({1}, {1});
  Wb.set(0, 0, klein_gordon(b.m2, 1));
  s.extra.push_back(detail::lu_identity("neutral: Q = L U", s.Q, b.m2, Wb));
  return s;
}

// p-form Proca operator with auxiliary (p+1)-form, 1 <= p <= 3.
inline StructureSystem neutral_alt_system(const Background& b, int p) {
  using namespace ops;
  if (p < 1 || p > 3) throw std::invalid_argument("neutral_alt_system: p must be 1..3");
  StructureSystem s;
  s.name = "neutral-alt(p=" + std::to_string(p) + ")";
  auto proca = [&](int deg) {
    return sum(scaled(CRational(-1), compose(codiff(deg + 1), ext_d(deg))), scalar(CRational(b.m2), deg));
  };
  s.P = SymBlockOp({p}, {p});
  s.P.set(0, 0, proca(p));
  s.Q = SymBlockOp({p, p + 1}, {p, p + 1});
  s.Q.set(0, 0, scalar(CRational(b.m2), p)).set(0, 1, scaled(CRational(-1), codiff(p + 1)));
  s.Q.set(1, 1, klein_gordon(b.m2, p + 1));
  s.D = SymBlockOp({p, p + 1}, {p});
  s.D.set(0, 0, identity(p)).set(1, 0, ext_d(p));
  s.pi = SymBlockOp({p}, {p, p + 1});
  s.pi.set(0, 0, identity(p));
  s.C = SymBlockOp({p + 1}, {p, p + 1});
  s.C.set(0, 0, scaled(CRational(-1), ext_d(p))).set(0, 1, identity(p + 1));
  s.N = SymBlockOp({p + 1}, {p + 1});
  s.N.set(0, 0, proca(p + 1));
  s.iota_aux = SymBlockOp({p, p + 1}, {p + 1});
  s.iota_aux.set(1, 0, identity(p + 1));
  s.pi_iota_vanishes = true;
  return s;
}

// k Proca fields with a polynomial mass-squared matrix rho; tuple order (phi_1..phi_k, W_1..W_k).
inline StructureSystem multiplet_system(const Background& b) {
  using namespace ops;
  const std::size_t k = b.rho.size();
  if (k == 0) throw std::invalid_argument("multiplet_system: empty rho");
  auto rep = [&](int deg) { return std::vector<int>(k, deg); };
  auto cat = [](std::vector<int> a, const std::vector<int>& c) {
    a.insert(a.end(), c.begin(), c.end());
    return a;
  };
  const auto aux = rep(0), fld = rep(1), all = cat(rep(0), rep(1));
  StructureSystem s;
  s.name = "multiplet(k=" + std::to_string(k) + ")";
  s.P = SymBlockOp(fld, fld);
  s.Q = SymBlockOp(all, all);
  s.D = SymBlockOp(all, fld);
  s.pi = SymBlockOp(fld, all);
  s.C = SymBlockOp(aux, all);
  s.N = SymBlockOp(aux, aux);
  s.iota_aux = SymBlockOp(all, aux);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t c = 0; c < k; ++c) {
      const Poly& r = b.rho[a][c];
      SymOp r0 = multiply(r, 0, "rho"), r1 = multiply(r, 1, "rho");
      PolyForm dr = d(PolyForm::scalar(r));
      if (a == c) {
        s.P.set(a, c, sum(scaled(CRational(-1), compose(codiff(2), ext_d(1))), r1));
        s.Q.set(k + a, k + c, sum(box(1), r1));
        s.N.set(a, c, sum(box(0), r0));
      } else {
        s.P.set(a, c, r1);
        s.Q.set(k + a, k + c, r1);
        s.N.set(a, c, r0);
      }
      s.Q.set(a, c, r0);
      s.Q.set(a, k + c, scaled(CRational(-1), contract(dr, 1, "(d rho).")));
    }
    s.Q.set(k + a, a, ext_d(0));
    s.D.set(a, a, codiff(1)).set(k + a, a, identity(1));
    s.pi.set(a, k + a, identity(1));
    s.C.set(a, a, identity(0)).set(a, k + a, scaled(CRational(-1), codiff(1)));
    s.iota_aux.set(a, a, identity(0));
  }
  s.pi_iota_vanishes = true;
  return s;
}

// Charged Proca with magnetic-moment parameter kappa; tuple order (phi, W, H).
inline StructureSystem charged_system(const Background& b) {
  using namespace ops;
  const PolyForm& A = b.A;
  const Rational& q = b.q;
  const PolyForm F = b.F(), j = b.j();
  const CRational I = iq(q), m2(b.m2);
  const CRational kap(b.kappa), one_minus_kap(Rational(1) - b.kappa);
  StructureSystem s;
  s.name = "charged";
  s.P = SymBlockOp({1}, {1});
  s.P.set(0, 0, sum(sum(scaled(CRational(-1), compose(deltaA(A, q, 2), dA(A, q, 1))), scaled(I * kap, F_dot(F))),
                    scalar(m2, 1)));
  s.Q = SymBlockOp({0, 1, 2}, {0, 1, 2});
  s.Q.set(0, 0, scalar(m2, 0));
  s.Q.set(0, 1, scaled(CRational(-1) * I * kap, contract(j, 1, "j.")));
  s.Q.set(0, 2, scaled(I * one_minus_kap, F_ddot(F, 2)));
  s.Q.set(1, 0, dA(A, q, 0));
  s.Q.set(1, 1, sum(klein_gordon_A(A, q, b.m2, 1), scaled(I * kap, F_dot(F))));
  s.Q.set(2, 1, sum(scaled(I, compose(deltaA(A, q, 3), wedge_with(F, 1, "F^"))),
                    scaled(I * kap, compose(dA(A, q, 1), F_dot(F)))));
  s.Q.set(2, 2, klein_gordon_A(A, q, b.m2, 2));
  s.D = SymBlockOp({0, 1, 2}, {1});
  s.D.set(0, 0, deltaA(A, q, 1)).set(1, 0, identity(1)).set(2, 0, dA(A, q, 1));
  s.pi = SymBlockOp({1}, {0, 1, 2});
  s.pi.set(0, 1, identity(1));
  s.C = SymBlockOp({0, 2}, {0, 1, 2});
  s.C.set(0, 0, identity(0)).set(0, 1, scaled(CRational(-1), deltaA(A, q, 1)));
  s.C.set(1, 1, scaled(CRational(-1), dA(A, q, 1))).set(1, 2, identity(2));
  s.N = SymBlockOp({0, 2}, {0, 2});
  s.N.set(0, 0, klein_gordon_A(A, q, b.m2, 0));
  s.N.set(0, 1, scaled(I * one_minus_kap, F_ddot(F, 2)));
  s.N.set(1, 0, scaled(CRational(-1) * I, wedge_with(F, 0, "F")));
  s.N.set(1, 1, klein_gordon_A(A, q, b.m2, 2));
  s.iota_aux = SymBlockOp({0, 1, 2}, {0, 2});
  s.iota_aux.set(0, 0, identity(0)).set(2, 1, identity(2));
  s.pi_iota_vanishes = true;

  // M_A written out explicitly, checked as the Schur complement block of Q_A.
  SymBlockOp M({1, 2}, {1, 2});
  const CRational c = I * inverse(m2);
  M.set(0, 0, sum(sum(klein_gordon_A(A, q, b.m2, 1), scaled(I * kap, F_dot(F))),
                  scaled(c * kap, compose(dA(A, q, 0), contract(j, 1, "j.")))));
  M.set(0, 1, scaled(c * (kap - CRational(1)), compose(dA(A, q, 0), F_ddot(F, 2))));
  M.set(1, 0, *s.Q.at(2, 1));
  M.set(1, 1, klein_gordon_A(A, q, b.m2, 2));
  s.extra.push_back(detail::lu_identity("charged: Q_A = L U with M_A", s.Q, b.m2, M));
  return s;
}

// Real Proca field coupled to a real scalar through v; tuple order (psi, V, W, phi).
inline StructureSystem proca_scalar_system(const Background& b) {
  using namespace ops;
  const PolyForm& v = b.v;
  const CRational m2(b.m2), mm2(b.mm2);
  const Poly div_v = codiff(1)(v)[0];
  StructureSystem s;
  s.name = "proca-scalar";
  SymOp proca = sum(scaled(CRational(-1), compose(codiff(2), ext_d(1))), scalar(m2, 1));
  SymOp v_wedge = wedge_with(v, 0, "v");
  SymOp v_dot = contract(v, 1, "v.");
  s.P = SymBlockOp({1, 0}, {1, 0});
  s.P.set(0, 0, proca).set(0, 1, v_wedge).set(1, 0, scaled(CRational(-1), v_dot)).set(1, 1, klein_gordon(b.mm2, 0));
  s.Q = SymBlockOp({0, 1, 1, 0}, {0, 1, 1, 0});
  s.Q.set(0, 0, scalar(m2, 0)).set(0, 1, scaled(CRational(-1), v_dot)).set(0, 3, multiply(div_v, 0, "(delta v)"));
  s.Q.set(1, 1, klein_gordon(b.mm2, 1)).set(1, 2, scaled(CRational(-1), compose(ext_d(0), v_dot)));
  s.Q.set(2, 0, ext_d(0)).set(2, 2, klein_gordon(b.m2, 1)).set(2, 3, v_wedge);
  s.Q.set(3, 2, scaled(CRational(-1), v_dot)).set(3, 3, klein_gordon(b.mm2, 0));
  s.D = SymBlockOp({0, 1, 1, 0}, {1, 0});
  s.D.set(0, 0, codiff(1)).set(1, 1, ext_d(0)).set(2, 0, identity(1)).set(3, 1, identity(0));
  s.pi = SymBlockOp({1, 0}, {0, 1, 1, 0});
  s.pi.set(0, 2, identity(1)).set(1, 3, identity(0));
  s.C = SymBlockOp({0, 1}, {0, 1, 1, 0});
  s.C.set(0, 0, identity(0)).set(0, 2, scaled(CRational(-1), codiff(1)));
  s.C.set(1, 1, identity(1)).set(1, 3, scaled(CRational(-1), ext_d(0)));
  s.N = SymBlockOp({0, 1}, {0, 1});
  s.N.set(0, 0, klein_gordon(b.m2, 0)).set(0, 1, scaled(CRational(-1), v_dot)).set(1, 1, klein_gordon(b.mm2, 1));
  s.iota_aux = SymBlockOp({0, 1, 1, 0}, {0, 1});
  s.iota_aux.set(0, 0, identity(0)).set(1, 1, identity(1));
  s.pi_iota_vanishes = true;

  // T written out explicitly, checked as the Schur complement block of Q.
  const CRational inv_m2 = inverse(m2);
  SymBlockOp T({1, 1, 0}, {1, 1, 0});
  T.set(0, 0, klein_gordon(b.mm2, 1)).set(0, 1, scaled(CRational(-1), compose(ext_d(0), v_dot)));
  T.set(1, 0, scaled(inv_m2, compose(ext_d(0), v_dot)));
  T.set(1, 1, klein_gordon(b.m2, 1));
  T.set(1, 2, sum(v_wedge, scaled(CRational(-1) * inv_m2, compose(ext_d(0), multiply(div_v, 0, "(delta v)")))));
  T.set(2, 1, scaled(CRational(-1), v_dot)).set(2, 2, klein_gordon(b.mm2, 0));
  s.extra.push_back(detail::lu_identity("proca-scalar: Q = L U with T", s.Q, b.m2, T));
  return s;
}

}  // namespace proca::sym

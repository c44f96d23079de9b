#pragma once

#include <string>

#include "proca/blockops/green.hpp"
#include "proca/blockops/linear_map.hpp"
#include "proca/lattice/green.hpp"

namespace proca::blk {

template <>
struct FieldTraits<lat::LatticeField> {
  static lat::LatticeField zero_like(const lat::LatticeField& f) { return lat::LatticeField(f.grid(), f.degree()); }
  static void add(lat::LatticeField& a, const lat::LatticeField& b) { a += b; }
  static void scale(lat::LatticeField& a, cplx c) { a *= c; }
  // Residuals are judged away from the one-sided stencils at the time ends.
  static double norm(const lat::LatticeField& f) { return f.norm_interior(); }
};

}  // namespace proca::blk

namespace proca::lat {

using Fields = blk::Tuple<LatticeField>;
using FieldMap = blk::LinearMap<LatticeField>;
using FieldGreen = blk::GreenPair<LatticeField>;

class OrderOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_interior(const Fields& x, const std::string& who) {
  for (const auto& f : x) {
    try {
      f.require_interior_support(who);
    } catch (const SupportViolation& e) {
      throw OrderOverflow(e.what());
    }
  }
}

// sum_{n=0}^{order} E0 (-V E0)^n f.
inline Fields born_series(const FieldMap& E0, const FieldMap& V, int order, const Fields& f) {
  if (order < 0) throw std::invalid_argument("born_series: order must be >= 0");
  Fields term = E0(f);
  Fields u = term;
  for (int n = 1; n <= order; ++n) {
    Fields s = V(term);
    require_interior(s, "born_series: V E0 term at order " + std::to_string(n));
    term = blk::tuple::scale(E0(s), -1.0);
    u = blk::tuple::add(u, term);
  }
  return u;
}

// Born-truncated Green pair for K + V; governed_by is K + V.
inline FieldGreen born_green(const FieldGreen& E0, const FieldMap& V, int order) {
  auto side = [&](const FieldMap& E, const std::string& tag) {
    return FieldMap{"Born" + std::to_string(order) + "[" + E.name + "]" + tag, E.domain, E.codomain, E.support,
                    [E, V, order](const Fields& x) { return born_series(E, V, order, x); }};
  };
  return {side(E0.retarded, ""), side(E0.advanced, ""), blk::sum(E0.governed_by, V)};
}

// Componentwise Klein-Gordon Green pair of one mass on a tuple of the given degrees.
inline FieldGreen kg_green_pair(const std::vector<int>& degrees, std::vector<double> masses) {
  if (masses.size() != degrees.size()) throw std::invalid_argument("kg_green_pair: one mass per slot");
  auto make = [=](Orientation o) {
    return FieldMap{"E_K" + std::string(o == Orientation::retarded ? "+" : "-"), degrees, degrees,
                    o == Orientation::retarded ? blk::SupportAction::future_directed
                                               : blk::SupportAction::past_directed,
                    [=](const Fields& x) {
                      Fields y;
                      for (std::size_t i = 0; i < x.size(); ++i) y.push_back(kg_green(x[i], masses[i], o));
                      return y;
                    }};
  };
  FieldMap K{"K", degrees, degrees, blk::SupportAction::local, [=](const Fields& x) {
               Fields y;
               for (std::size_t i = 0; i < x.size(); ++i) y.push_back(kg_operator(x[i], masses[i] * masses[i]));
               return y;
             }};
  return {make(Orientation::retarded), make(Orientation::advanced), K};
}

}  // namespace proca::lat

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "proca/blockops/linear_map.hpp"

namespace proca::blk {

// Lemma-style LU inversion of Q = [[P, R], [S, T]] with P invertible and W = T - S P^{-1} R
// governed by E_W:  E_Q = [[P^{-1}, -P^{-1} R E_W], [0, E_W]] [[id, 0], [-S P^{-1}, id]].
template <class Field>
GreenPair<Field> lu_green(const LinearMap<Field>& P_blk, const std::optional<LinearMap<Field>>& P_inv,
                          const LinearMap<Field>& R, const LinearMap<Field>& S, const LinearMap<Field>& T,
                          const GreenPair<Field>& E_W) {
  if (!P_inv) throw NotInvertible("lu_green: no inverse supplied for " + P_blk.name);
  const std::size_t n1 = P_blk.domain.size();
  std::vector<int> dom = P_blk.domain;
  dom.insert(dom.end(), T.domain.begin(), T.domain.end());
  const LinearMap<Field> Pi = *P_inv;

  auto make = [=](const LinearMap<Field>& EW, SupportAction sa, const std::string& tag) {
    return LinearMap<Field>{
        "E_Q" + tag, dom, dom, sa, [=](const Tuple<Field>& x) {
          Tuple<Field> f1 = tuple::slice(x, 0, n1);
          Tuple<Field> f2 = tuple::slice(x, n1, x.size());
          Tuple<Field> p1 = Pi(f1);
          Tuple<Field> g2 = tuple::add(f2, S(p1), -1.0);
          Tuple<Field> y2 = EW(g2);
          Tuple<Field> y1 = tuple::add(p1, Pi(R(y2)), -1.0);
          return tuple::concat(y1, y2);
        }};
  };
  LinearMap<Field> Q{"Q", dom, dom, SupportAction::local, [=](const Tuple<Field>& x) {
                       Tuple<Field> x1 = tuple::slice(x, 0, n1);
                       Tuple<Field> x2 = tuple::slice(x, n1, x.size());
                       return tuple::concat(tuple::add(P_blk(x1), R(x2)), tuple::add(S(x1), T(x2)));
                     }};
  return {make(E_W.retarded, SupportAction::future_directed, "+"),
          make(E_W.advanced, SupportAction::past_directed, "-"), Q};
}

// E_P = pi E_Q D. The optional check runs first and must throw StructureViolation on failure.
template <class Field>
GreenPair<Field> assemble_green(const LinearMap<Field>& pi, const LinearMap<Field>& D, const GreenPair<Field>& E_Q,
                                const LinearMap<Field>& P, const std::function<void()>& structure_check = {}) {
  if (structure_check) structure_check();
  auto side = [&](const LinearMap<Field>& E, const std::string& tag) {
    LinearMap<Field> m = compose(pi, compose(E, D));
    m.name = "E_P" + tag;
    m.support = E.support;
    return m;
  };
  return {side(E_Q.retarded, "+"), side(E_Q.advanced, "-"), P};
}

struct ResidualEntry {
  std::string check;
  std::string source;
  std::string orientation;
  double norm = 0;
  double reference = 0;
  double relative = 0;
  bool pass = false;
};

struct ResidualReport {
  std::string name;
  double tolerance = 0;
  std::vector<ResidualEntry> entries;

  bool ok() const {
    for (const auto& e : entries) {
      if (!e.pass) return false;
    }
    return true;
  }

  double max_relative() const {
    double m = 0;
    for (const auto& e : entries) m = std::max(m, e.relative);
    return m;
  }

  void add(std::string check, std::string source, std::string orientation, double norm, double reference) {
    double rel = reference > 0 ? norm / reference : norm;
    entries.push_back({std::move(check), std::move(source), std::move(orientation), norm, reference, rel,
                       rel <= tolerance});
  }

  nlohmann::json to_json() const {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : entries) {
      a.push_back({{"check", e.check}, {"source", e.source}, {"orientation", e.orientation}, {"norm", e.norm},
                   {"reference", e.reference}, {"relative", e.relative}, {"pass", e.pass}});
    }
    return {{"name", name}, {"tolerance", tolerance}, {"pass", ok()}, {"entries", a}};
  }
};

template <class Field>
struct LabelledSource {
  std::string label;
  Tuple<Field> value;
};

// Per-source norm of C E_Q D J for both orientations.
template <class Field>
ResidualReport verify_constraint(const LinearMap<Field>& C, const GreenPair<Field>& E_Q, const LinearMap<Field>& D,
                                 const std::vector<LabelledSource<Field>>& sources, double tolerance) {
  ResidualReport rep{"constraint", tolerance, {}};
  for (const auto& s : sources) {
    const double ref = tuple::norm(s.value);
    Tuple<Field> DJ = D(s.value);
    for (bool ret : {true, false}) {
      rep.add("C E_Q D J", s.label, ret ? "retarded" : "advanced", tuple::norm(C(E_Q.get(ret)(DJ))), ref);
    }
  }
  return rep;
}

// Central squares of the chain diagram: D E_P = E_Q D and C E_Q = E_N C on compact inputs.
template <class Field>
ResidualReport verify_intertwine(const LinearMap<Field>& D, const LinearMap<Field>& C, const GreenPair<Field>& E_P,
                                 const GreenPair<Field>& E_Q, const GreenPair<Field>& E_N,
                                 const std::vector<LabelledSource<Field>>& sources_B,
                                 const std::vector<LabelledSource<Field>>& sources_Q, double tolerance) {
  ResidualReport rep{"intertwine", tolerance, {}};
  for (bool ret : {true, false}) {
    const char* o = ret ? "retarded" : "advanced";
    for (const auto& s : sources_B) {
      Tuple<Field> lhs = D(E_P.get(ret)(s.value));
      Tuple<Field> rhs = E_Q.get(ret)(D(s.value));
      rep.add("D E_P - E_Q D", s.label, o, tuple::norm(tuple::add(lhs, rhs, -1.0)), tuple::norm(rhs));
    }
    for (const auto& s : sources_Q) {
      Tuple<Field> lhs = C(E_Q.get(ret)(s.value));
      Tuple<Field> rhs = E_N.get(ret)(C(s.value));
      rep.add("C E_Q - E_N C", s.label, o, tuple::norm(tuple::add(lhs, rhs, -1.0)), tuple::norm(rhs));
    }
  }
  return rep;
}

// G1 and G2 residuals, plus G3 when the backend supplies a leakage measure.
template <class Field>
ResidualReport verify_green_axioms(
    const GreenPair<Field>& E, const std::vector<LabelledSource<Field>>& sources, double tolerance,
    const std::function<double(const Tuple<Field>& out, const Tuple<Field>& src, bool retarded)>& leakage = {},
    double leak_tolerance = 0) {
  ResidualReport rep{"green-axioms", tolerance, {}};
  for (const auto& s : sources) {
    const double ref = tuple::norm(s.value);
    for (bool ret : {true, false}) {
      const char* o = ret ? "retarded" : "advanced";
      const auto& Em = E.get(ret);
      Tuple<Field> u = Em(s.value);
      rep.add("G1", s.label, o, tuple::norm(tuple::add(E.governed_by(u), s.value, -1.0)), ref);
      Tuple<Field> v = Em(E.governed_by(s.value));
      rep.add("G2", s.label, o, tuple::norm(tuple::add(v, s.value, -1.0)), ref);
      if (leakage) {
        ResidualEntry e{"G3", s.label, o, 0, 1, leakage(u, s.value, ret), false};
        e.norm = e.relative;
        e.pass = e.relative <= leak_tolerance;
        rep.entries.push_back(e);
      }
    }
  }
  return rep;
}

// Locally testable fragment of exactness: with E = E^- - E^+, both E P f and P E f vanish for compact f.
template <class Field>
ResidualReport verify_causal_propagator(const GreenPair<Field>& E, const std::vector<LabelledSource<Field>>& sources,
                                        double tolerance) {
  ResidualReport rep{"causal-propagator", tolerance, {}};
  auto prop = [&](const Tuple<Field>& x) { return tuple::add(E.advanced(x), E.retarded(x), -1.0); };
  for (const auto& s : sources) {
    const double ref = tuple::norm(s.value);
    rep.add("E P f", s.label, "E^- - E^+", tuple::norm(prop(E.governed_by(s.value))), ref);
    Tuple<Field> Ef = prop(s.value);
    rep.add("P E f", s.label, "E^- - E^+", tuple::norm(E.governed_by(Ef)), tuple::norm(Ef));
  }
  return rep;
}

}  // namespace proca::blk

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace proca::blk {

using cplx = std::complex<double>;

// Backend hooks a field type must provide for the generic block algebra.
// Specialize with: zero_like, add (a += b), scale (a *= c), norm.
template <class Field>
struct FieldTraits;

template <class Field>
using Tuple = std::vector<Field>;

enum class SupportAction { local, future_directed, past_directed };

inline std::string to_string(SupportAction s) {
  switch (s) {
    case SupportAction::local: return "local";
    case SupportAction::future_directed: return "future-directed";
    case SupportAction::past_directed: return "past-directed";
  }
  return "unknown";
}

template <class Field>
struct LinearMap {
  std::string name;
  std::vector<int> domain;
  std::vector<int> codomain;
  SupportAction support = SupportAction::local;
  std::function<Tuple<Field>(const Tuple<Field>&)> fn;

  Tuple<Field> operator()(const Tuple<Field>& x) const {
    if (x.size() != domain.size()) {
      throw std::invalid_argument("LinearMap " + name + ": expected " + std::to_string(domain.size()) +
                                  " fields, got " + std::to_string(x.size()));
    }
    Tuple<Field> y = fn(x);
    if (y.size() != codomain.size()) throw std::logic_error("LinearMap " + name + ": wrong output arity");
    return y;
  }
};

template <class Field>
struct GreenPair {
  LinearMap<Field> retarded;
  LinearMap<Field> advanced;
  LinearMap<Field> governed_by;

  const LinearMap<Field>& get(bool retarded_side) const { return retarded_side ? retarded : advanced; }
};

class NotInvertible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class StructureViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace tuple {

template <class Field>
Tuple<Field> add(Tuple<Field> a, const Tuple<Field>& b, cplx cb = 1.0) {
  if (a.size() != b.size()) throw std::invalid_argument("tuple::add: arity mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (cb == cplx(1.0)) {
      FieldTraits<Field>::add(a[i], b[i]);
    } else {
      Field t = b[i];
      FieldTraits<Field>::scale(t, cb);
      FieldTraits<Field>::add(a[i], t);
    }
  }
  return a;
}

template <class Field>
Tuple<Field> scale(Tuple<Field> a, cplx c) {
  for (auto& f : a) FieldTraits<Field>::scale(f, c);
  return a;
}

template <class Field>
double norm(const Tuple<Field>& a) {
  double s = 0;
  for (const auto& f : a) {
    double n = FieldTraits<Field>::norm(f);
    s += n * n;
  }
  return std::sqrt(s);
}

template <class Field>
Tuple<Field> slice(const Tuple<Field>& a, std::size_t begin, std::size_t end) {
  return Tuple<Field>(a.begin() + static_cast<std::ptrdiff_t>(begin), a.begin() + static_cast<std::ptrdiff_t>(end));
}

template <class Field>
Tuple<Field> concat(Tuple<Field> a, const Tuple<Field>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace tuple

template <class Field>
LinearMap<Field> compose(const LinearMap<Field>& a, const LinearMap<Field>& b) {
  if (a.domain != b.codomain) throw std::invalid_argument("compose: " + a.name + " o " + b.name + " degree mismatch");
  SupportAction s = a.support == SupportAction::local ? b.support : a.support;
  return {a.name + " o " + b.name, b.domain, a.codomain, s, [a, b](const Tuple<Field>& x) { return a(b(x)); }};
}

template <class Field>
LinearMap<Field> sum(const LinearMap<Field>& a, const LinearMap<Field>& b, cplx cb = 1.0) {
  if (a.domain != b.domain || a.codomain != b.codomain) throw std::invalid_argument("sum: shape mismatch");
  return {a.name + " + " + b.name, a.domain, a.codomain, a.support,
          [a, b, cb](const Tuple<Field>& x) { return tuple::add(a(x), b(x), cb); }};
}

template <class Field>
LinearMap<Field> scaled(const LinearMap<Field>& a, cplx c) {
  return {a.name, a.domain, a.codomain, a.support, [a, c](const Tuple<Field>& x) { return tuple::scale(a(x), c); }};
}

// Projection of a tuple onto entries [begin, end).
template <class Field>
LinearMap<Field> projection(const std::vector<int>& domain, std::size_t begin, std::size_t end) {
  std::vector<int> cod(domain.begin() + static_cast<std::ptrdiff_t>(begin), domain.begin() + static_cast<std::ptrdiff_t>(end));
  return {"pi", domain, cod, SupportAction::local,
          [begin, end](const Tuple<Field>& x) { return tuple::slice(x, begin, end); }};
}

}  // namespace proca::blk

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "proca/symforms/ops.hpp"

namespace proca::sym {

// A linear differential operator between forms of fixed degree.
struct SymOp {
  int in_degree = 0;
  int out_degree = 0;
  std::string name;
  std::function<PolyForm(const PolyForm&)> fn;

  PolyForm operator()(const PolyForm& w) const {
    if (w.degree() != in_degree) {
      throw std::invalid_argument("SymOp " + name + ": expected degree " + std::to_string(in_degree) +
                                  ", got " + std::to_string(w.degree()));
    }
    PolyForm r = fn(w);
    if (r.degree() != out_degree) throw std::logic_error("SymOp " + name + ": wrong output degree");
    return r;
  }
};

namespace ops {

inline SymOp identity(int p) {
  return {p, p, "id", [](const PolyForm& w) { return w; }};
}

inline SymOp scalar(const CRational& c, int p, std::string name = "c") {
  return {p, p, std::move(name), [c](const PolyForm& w) { return c * w; }};
}

// Multiplication by a polynomial function.
inline SymOp multiply(const Poly& f, int p, std::string name = "f") {
  return {p, p, std::move(name), [f](const PolyForm& w) { return f * w; }};
}

inline SymOp ext_d(int p) {
  return {p, p + 1, "d", [](const PolyForm& w) { return d(w); }};
}

inline SymOp codiff(int p) {
  return {p, p - 1, "delta", [](const PolyForm& w) { return proca::sym::codiff(w); }};
}

inline SymOp dA(const PolyForm& A, const Rational& q, int p) {
  return {p, p + 1, "d_A", [A, q](const PolyForm& w) { return proca::sym::dA(w, A, q); }};
}

inline SymOp deltaA(const PolyForm& A, const Rational& q, int p) {
  return {p, p - 1, "delta_A", [A, q](const PolyForm& w) { return proca::sym::deltaA(w, A, q); }};
}

inline SymOp box(int p) {
  return {p, p, "box", [](const PolyForm& w) { return proca::sym::box(w); }};
}

inline SymOp boxA(const PolyForm& A, const Rational& q, int p) {
  return {p, p, "box_A", [A, q](const PolyForm& w) { return proca::sym::boxA(w, A, q); }};
}

// K = box + m^2 on p-forms.
inline SymOp klein_gordon(const Rational& m2, int p) {
  return {p, p, "K", [m2](const PolyForm& w) { return proca::sym::box(w) + CRational(m2) * w; }};
}

inline SymOp klein_gordon_A(const PolyForm& A, const Rational& q, const Rational& m2, int p) {
  return {p, p, "K_A", [A, q, m2](const PolyForm& w) { return proca::sym::boxA(w, A, q) + CRational(m2) * w; }};
}

// Left wedge with a fixed form: w -> a ^ w.
inline SymOp wedge_with(const PolyForm& a, int p, std::string name = "a^") {
  const int out = p + a.degree();
  return {p, out, std::move(name), [a](const PolyForm& w) { return wedge(a, w); }};
}

// Contraction v^a w_{a...}.
inline SymOp contract(const PolyForm& v, int p, std::string name = "v.") {
  return {p, p - 1, std::move(name), [v](const PolyForm& w) { return interior(v, w); }};
}

inline SymOp F_dot(const PolyForm& F) {
  return {1, 1, "F.", [F](const PolyForm& w) { return proca::sym::F_dot(F, w); }};
}

inline SymOp F_ddot(const PolyForm& F, int p) {
  return {p, p - 2, "F..", [F](const PolyForm& w) { return proca::sym::F_ddot(F, w); }};
}

inline SymOp zero(int in, int out) {
  return {in, out, "0", [out](const PolyForm&) { return PolyForm(out); }};
}

// a o b
inline SymOp compose(const SymOp& a, const SymOp& b) {
  if (a.in_degree != b.out_degree) throw std::invalid_argument("compose: degree mismatch " + a.name + " o " + b.name);
  return {b.in_degree, a.out_degree, a.name + " o " + b.name, [a, b](const PolyForm& w) { return a(b(w)); }};
}

inline SymOp sum(const SymOp& a, const SymOp& b) {
  if (a.in_degree != b.in_degree || a.out_degree != b.out_degree) {
    throw std::invalid_argument("sum: degree mismatch " + a.name + " + " + b.name);
  }
  return {a.in_degree, a.out_degree, a.name + " + " + b.name, [a, b](const PolyForm& w) { return a(w) + b(w); }};
}

inline SymOp scaled(const CRational& c, const SymOp& a) {
  return {a.in_degree, a.out_degree, a.name, [c, a](const PolyForm& w) { return c * a(w); }};
}

}  // namespace ops

// Matrix of operators acting on a tuple of forms; empty entries are zero.
class SymBlockOp {
 public:
  SymBlockOp() = default;
  SymBlockOp(std::vector<int> out_degrees, std::vector<int> in_degrees)
      : out_(std::move(out_degrees)), in_(std::move(in_degrees)), entries_(out_.size(), std::vector<std::optional<SymOp>>(in_.size())) {}

  static SymBlockOp identity(const std::vector<int>& degrees) {
    SymBlockOp r(degrees, degrees);
    for (std::size_t i = 0; i < degrees.size(); ++i) r.set(i, i, ops::identity(degrees[i]));
    return r;
  }

  const std::vector<int>& out_degrees() const { return out_; }
  const std::vector<int>& in_degrees() const { return in_; }
  std::size_t rows() const { return out_.size(); }
  std::size_t cols() const { return in_.size(); }

  const std::optional<SymOp>& at(std::size_t i, std::size_t j) const { return entries_.at(i).at(j); }

  SymBlockOp& set(std::size_t i, std::size_t j, SymOp op) {
    if (op.in_degree != in_.at(j) || op.out_degree != out_.at(i)) {
      throw std::invalid_argument("SymBlockOp::set: entry " + op.name + " has degrees " + std::to_string(op.in_degree) +
                                  "->" + std::to_string(op.out_degree) + " at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
    }
    entries_[i][j] = std::move(op);
    return *this;
  }

  std::vector<PolyForm> apply(const std::vector<PolyForm>& x) const {
    if (x.size() != cols()) throw std::invalid_argument("SymBlockOp::apply: tuple length mismatch");
    for (std::size_t j = 0; j < cols(); ++j) {
      if (x[j].degree() != in_[j]) throw std::invalid_argument("SymBlockOp::apply: degree mismatch");
    }
    std::vector<PolyForm> y;
    y.reserve(rows());
    for (std::size_t i = 0; i < rows(); ++i) {
      PolyForm acc(out_[i]);
      for (std::size_t j = 0; j < cols(); ++j) {
        if (entries_[i][j]) acc += (*entries_[i][j])(x[j]);
      }
      y.push_back(std::move(acc));
    }
    return y;
  }

  std::vector<PolyForm> operator()(const std::vector<PolyForm>& x) const { return apply(x); }

 private:
  std::vector<int> out_;
  std::vector<int> in_;
  std::vector<std::vector<std::optional<SymOp>>> entries_;
};

// Block product a * b.
inline SymBlockOp compose(const SymBlockOp& a, const SymBlockOp& b) {
  if (a.in_degrees() != b.out_degrees()) throw std::invalid_argument("compose: block degree mismatch");
  SymBlockOp r(a.out_degrees(), b.in_degrees());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::optional<SymOp> acc;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (!a.at(i, k) || !b.at(k, j)) continue;
        SymOp term = ops::compose(*a.at(i, k), *b.at(k, j));
        acc = acc ? ops::sum(*acc, term) : term;
      }
      if (acc) r.set(i, j, *acc);
    }
  }
  return r;
}

inline SymBlockOp operator*(const SymBlockOp& a, const SymBlockOp& b) { return compose(a, b); }

inline SymBlockOp add(const SymBlockOp& a, const SymBlockOp& b, const CRational& cb = CRational(1)) {
  if (a.out_degrees() != b.out_degrees() || a.in_degrees() != b.in_degrees()) {
    throw std::invalid_argument("add: block shape mismatch");
  }
  SymBlockOp r(a.out_degrees(), a.in_degrees());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& x = a.at(i, j);
      std::optional<SymOp> y;
      if (b.at(i, j)) y = ops::scaled(cb, *b.at(i, j));
      if (x && y) {
        r.set(i, j, ops::sum(*x, *y));
      } else if (x) {
        r.set(i, j, *x);
      } else if (y) {
        r.set(i, j, *y);
      }
    }
  }
  return r;
}

inline SymBlockOp operator+(const SymBlockOp& a, const SymBlockOp& b) { return add(a, b); }
inline SymBlockOp operator-(const SymBlockOp& a, const SymBlockOp& b) { return add(a, b, CRational(-1)); }

}  // namespace proca::sym

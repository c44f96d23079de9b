#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "proca/symforms/scalar.hpp"

namespace proca::sym {

// Index sets of {t,x,y,z} = {0,1,2,3} are stored as 4-bit masks.
using IndexMask = std::uint8_t;

inline int mask_size(IndexMask m) { return std::popcount(static_cast<unsigned>(m)); }

// Basis masks of degree p in lexicographic order of the increasing index tuples.
inline const std::vector<IndexMask>& basis(int p) {
  static const std::array<std::vector<IndexMask>, 5> table = [] {
    std::array<std::vector<IndexMask>, 5> t;
    t[0] = {0b0000};
    t[1] = {0b0001, 0b0010, 0b0100, 0b1000};
    t[2] = {0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100};
    t[3] = {0b0111, 0b1011, 0b1101, 0b1110};
    t[4] = {0b1111};
    return t;
  }();
  static const std::vector<IndexMask> empty;
  if (p < 0 || p > 4) return empty;
  return table[static_cast<std::size_t>(p)];
}

inline int basis_index(IndexMask m) {
  const auto& b = basis(mask_size(m));
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] == m) return static_cast<int>(i);
  }
  throw std::logic_error("basis_index: unreachable mask");
}

inline int num_components(int p) { return static_cast<int>(basis(p).size()); }

// Sign of dx^I ^ dx^J relative to dx^{I u J} for disjoint I, J; 0 if they overlap.
inline int merge_sign(IndexMask a, IndexMask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (int i = 0; i < 4; ++i) {
    if (!(a & (1u << i))) continue;
    for (int j = 0; j < i; ++j) {
      if (b & (1u << j)) ++inversions;
    }
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

inline std::string mask_name(IndexMask m) {
  static const char* names[4] = {"dt", "dx", "dy", "dz"};
  if (m == 0) return "1";
  std::string s;
  for (int i = 0; i < 4; ++i) {
    if (!(m & (1u << i))) continue;
    if (!s.empty()) s += "^";
    s += names[i];
  }
  return s;
}

// Complex p-form with polynomial components, stored on increasing index tuples.
// Degrees above 4 are legal and carry no components.
class PolyForm {
 public:
  PolyForm() : PolyForm(0) {}
  explicit PolyForm(int degree) : deg_(degree), comp_(static_cast<std::size_t>(num_components(degree))) {
    if (degree < 0) throw std::invalid_argument("PolyForm: negative degree");
  }

  static PolyForm scalar(const Poly& p) {
    PolyForm f(0);
    f.comp_[0] = p;
    return f;
  }
  static PolyForm basis_form(IndexMask m, const Poly& coeff = Poly(1)) {
    PolyForm f(mask_size(m));
    f.comp_[static_cast<std::size_t>(basis_index(m))] = coeff;
    return f;
  }

  int degree() const { return deg_; }
  int size() const { return static_cast<int>(comp_.size()); }

  const Poly& operator[](int i) const { return comp_[static_cast<std::size_t>(i)]; }
  Poly& operator[](int i) { return comp_[static_cast<std::size_t>(i)]; }
  const Poly& at_mask(IndexMask m) const { return comp_[static_cast<std::size_t>(basis_index(m))]; }
  Poly& at_mask(IndexMask m) { return comp_[static_cast<std::size_t>(basis_index(m))]; }

  bool is_zero() const {
    for (const auto& p : comp_) {
      if (!p.is_zero()) return false;
    }
    return true;
  }

  PolyForm& operator+=(const PolyForm& o) {
    check_same_degree(o);
    for (std::size_t i = 0; i < comp_.size(); ++i) comp_[i] += o.comp_[i];
    return *this;
  }
  PolyForm& operator-=(const PolyForm& o) {
    check_same_degree(o);
    for (std::size_t i = 0; i < comp_.size(); ++i) comp_[i] -= o.comp_[i];
    return *this;
  }
  PolyForm& operator*=(const CRational& s) {
    for (auto& p : comp_) p *= s;
    return *this;
  }

  PolyForm conj() const {
    PolyForm r(deg_);
    for (std::size_t i = 0; i < comp_.size(); ++i) r.comp_[i] = comp_[i].conj();
    return r;
  }

  friend bool operator==(const PolyForm& a, const PolyForm& b) { return a.deg_ == b.deg_ && a.comp_ == b.comp_; }

  std::string str() const {
    std::string s;
    const auto& b = basis(deg_);
    for (std::size_t i = 0; i < comp_.size(); ++i) {
      if (comp_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + comp_[i].str() + ")" + (deg_ == 0 ? "" : " " + mask_name(b[i]));
    }
    return s.empty() ? "0 [deg " + std::to_string(deg_) + "]" : s;
  }

 private:
  void check_same_degree(const PolyForm& o) const {
    if (o.deg_ != deg_) throw std::invalid_argument("PolyForm: degree mismatch in sum");
  }

  int deg_;
  std::vector<Poly> comp_;
};

inline PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
inline PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
inline PolyForm operator-(const PolyForm& a) {
  PolyForm r = a;
  r *= CRational(-1);
  return r;
}
inline PolyForm operator*(const CRational& s, PolyForm a) { return a *= s; }

// Multiplication by a 0-form coefficient function.
inline PolyForm operator*(const Poly& f, const PolyForm& a) {
  PolyForm r(a.degree());
  for (int i = 0; i < a.size(); ++i) r[i] = f * a[i];
  return r;
}

inline PolyForm wedge(const PolyForm& a, const PolyForm& b) {
  PolyForm r(a.degree() + b.degree());
  if (r.size() == 0) return r;
  const auto& ba = basis(a.degree());
  const auto& bb = basis(b.degree());
  for (int i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      int s = merge_sign(ba[static_cast<std::size_t>(i)], bb[static_cast<std::size_t>(j)]);
      if (s == 0) continue;
      Poly prod = a[i] * b[j];
      if (s < 0) prod *= CRational(-1);
      r.at_mask(static_cast<IndexMask>(ba[static_cast<std::size_t>(i)] | bb[static_cast<std::size_t>(j)])) += prod;
    }
  }
  return r;
}

// Exterior derivative: d(w_I dx^I) = sum_mu d_mu w_I dx^mu ^ dx^I.
inline PolyForm d(const PolyForm& w) {
  PolyForm r(w.degree() + 1);
  if (r.size() == 0) return r;
  const auto& b = basis(w.degree());
  for (int i = 0; i < w.size(); ++i) {
    if (w[i].is_zero()) continue;
    IndexMask I = b[static_cast<std::size_t>(i)];
    for (int mu = 0; mu < 4; ++mu) {
      IndexMask m = static_cast<IndexMask>(1u << mu);
      int s = merge_sign(m, I);
      if (s == 0) continue;
      Poly der = w[i].derivative(mu);
      if (der.is_zero()) continue;
      if (s < 0) der *= CRational(-1);
      r.at_mask(static_cast<IndexMask>(m | I)) += der;
    }
  }
  return r;
}

}  // namespace proca::sym

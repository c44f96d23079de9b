#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace proca::sym {

using Rational = mpq_class;

// Exact element of Q(i).
struct CRational {
  Rational re;
  Rational im;

  CRational() : re(0), im(0) {}
  CRational(long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  CRational(Rational r) : re(std::move(r)), im(0) {}  // NOLINT
  CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static CRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  CRational conj() const { return {re, -im}; }

  CRational& operator+=(const CRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CRational& operator-=(const CRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  CRational& operator*=(const CRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational s = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(s);
    return *this;
  }
};

inline CRational operator+(CRational a, const CRational& b) { return a += b; }
inline CRational operator-(CRational a, const CRational& b) { return a -= b; }
inline CRational operator*(CRational a, const CRational& b) { return a *= b; }
inline CRational operator-(const CRational& a) { return {-a.re, -a.im}; }
inline bool operator==(const CRational& a, const CRational& b) { return a.re == b.re && a.im == b.im; }

inline CRational inverse(const CRational& a) {
  Rational n = a.re * a.re + a.im * a.im;
  return {a.re / n, -a.im / n};
}

inline std::ostream& operator<<(std::ostream& os, const CRational& c) {
  if (sgn(c.im) == 0) return os << c.re.get_str();
  if (sgn(c.re) == 0) return os << c.im.get_str() << "i";
  return os << "(" << c.re.get_str() << (sgn(c.im) > 0 ? "+" : "") << c.im.get_str() << "i)";
}

// Monomial t^a x^b y^c z^d packed as four 8-bit exponents.
using Monomial = std::uint32_t;

inline int exponent(Monomial m, int var) { return static_cast<int>((m >> (8 * var)) & 0xFFu); }

inline Monomial make_monomial(int et, int ex, int ey, int ez) {
  return static_cast<Monomial>(et) | (static_cast<Monomial>(ex) << 8) | (static_cast<Monomial>(ey) << 16) |
         (static_cast<Monomial>(ez) << 24);
}

inline int total_degree(Monomial m) {
  return exponent(m, 0) + exponent(m, 1) + exponent(m, 2) + exponent(m, 3);
}

// Polynomial in (t, x, y, z) with coefficients in Q(i). Zero coefficients are never stored.
class Poly {
 public:
  using Terms = std::map<Monomial, CRational>;

  Poly() = default;
  Poly(const CRational& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(Monomial{0}, c);
  }
  Poly(long c) : Poly(CRational(c)) {}  // NOLINT

  static Poly coordinate(int var) {
    Poly p;
    int e[4] = {0, 0, 0, 0};
    e[var] = 1;
    p.terms_.emplace(make_monomial(e[0], e[1], e[2], e[3]), CRational(1));
    return p;
  }
  static Poly term(Monomial m, const CRational& c) {
    Poly p;
    if (!c.is_zero()) p.terms_.emplace(m, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(Monomial m, const CRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const CRational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  Poly conj() const {
    Poly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, c.conj());
    return r;
  }

  Poly derivative(int var) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
      int e = exponent(m, var);
      if (e == 0) continue;
      Monomial nm = m - (Monomial{1} << (8 * var));
      r.add_term(nm, c * CRational(e));
    }
    return r;
  }

  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
    return d;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    static const char* names[4] = {"t", "x", "y", "z"};
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << c;
      for (int v = 0; v < 4; ++v) {
        int e = exponent(m, v);
        if (e == 1) os << "*" << names[v];
        if (e > 1) os << "*" << names[v] << "^" << e;
      }
    }
    return os.str();
  }

 private:
  Terms terms_;
};

inline Poly operator+(Poly a, const Poly& b) { return a += b; }
inline Poly operator-(Poly a, const Poly& b) { return a -= b; }
inline Poly operator-(const Poly& a) {
  Poly r = a;
  r *= CRational(-1);
  return r;
}
inline Poly operator*(Poly a, const CRational& s) { return a *= s; }
inline Poly operator*(const CRational& s, Poly a) { return a *= s; }

inline Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) r.add_term(ma + mb, ca * cb);
  }
  return r;
}

}  // namespace proca::sym

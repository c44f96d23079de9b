#pragma once

// Dense antisymmetric-tensor evaluation of the form operations, used as an
// independent check of the mask-based implementation in proca/symforms.

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "proca/symforms/ops.hpp"

namespace oracle {

using proca::sym::CRational;
using proca::sym::Poly;
using proca::sym::PolyForm;
using Tuple = std::vector<int>;

inline int perm_sign(Tuple t) {
  int s = 1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (t[i] == t[j]) return 0;
      if (t[i] > t[j]) s = -s;
    }
  }
  return s;
}

inline long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

inline void all_tuples(int p, Tuple& cur, std::vector<Tuple>& out) {
  if (static_cast<int>(cur.size()) == p) {
    out.push_back(cur);
    return;
  }
  for (int a = 0; a < 4; ++a) {
    cur.push_back(a);
    all_tuples(p, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Tuple> tuples(int p) {
  std::vector<Tuple> out;
  Tuple cur;
  all_tuples(p, cur, out);
  return out;
}

struct Tensor {
  int p = 0;
  std::map<Tuple, Poly> c;

  Poly at(const Tuple& t) const {
    auto it = c.find(t);
    return it == c.end() ? Poly() : it->second;
  }
};

inline Tensor to_tensor(const PolyForm& w) {
  Tensor T;
  T.p = w.degree();
  for (const auto& t : tuples(T.p)) {
    int s = perm_sign(t);
    if (s == 0) continue;
    Tuple sorted = t;
    std::sort(sorted.begin(), sorted.end());
    proca::sym::IndexMask m = 0;
    for (int a : sorted) m = static_cast<proca::sym::IndexMask>(m | (1u << a));
    Poly v = w.at_mask(m);
    if (s < 0) v = -v;
    if (!v.is_zero()) T.c[t] = v;
  }
  return T;
}

inline PolyForm from_tensor(const Tensor& T) {
  PolyForm w(T.p);
  const auto& b = proca::sym::basis(T.p);
  for (std::size_t i = 0; i < b.size(); ++i) {
    Tuple t;
    for (int a = 0; a < 4; ++a) {
      if (b[i] & (1u << a)) t.push_back(a);
    }
    w[static_cast<int>(i)] = T.at(t);
  }
  return w;
}

inline std::vector<Tuple> permutations(int n) {
  std::vector<Tuple> out;
  Tuple t(static_cast<std::size_t>(n));
  std::iota(t.begin(), t.end(), 0);
  do {
    out.push_back(t);
  } while (std::next_permutation(t.begin(), t.end()));
  return out;
}

// (w ^ e)_{a1..ap b1..bq} = (p+q)!/(p!q!) w_[a e_b].
inline PolyForm wedge(const PolyForm& w, const PolyForm& e) {
  Tensor A = to_tensor(w), B = to_tensor(e), R;
  R.p = A.p + B.p;
  if (R.p > 4) return PolyForm(R.p);
  const auto perms = permutations(R.p);
  for (const auto& t : tuples(R.p)) {
    if (perm_sign(t) == 0) continue;
    Poly acc;
    for (const auto& s : perms) {
      Tuple idx(static_cast<std::size_t>(R.p));
      for (int k = 0; k < R.p; ++k) idx[static_cast<std::size_t>(k)] = t[static_cast<std::size_t>(s[static_cast<std::size_t>(k)])];
      Tuple ia(idx.begin(), idx.begin() + A.p), ib(idx.begin() + A.p, idx.end());
      Poly term = A.at(ia) * B.at(ib);
      if (perm_sign(s) < 0) term = -term;
      acc += term;
    }
    acc *= CRational(proca::sym::Rational(1, factorial(A.p) * factorial(B.p)));
    if (!acc.is_zero()) R.c[t] = acc;
  }
  return from_tensor(R);
}

// (*w)_{b...} = (1/p!) w^{a...} eps_{a... b...}, eps_{0123} = +1.
inline PolyForm hodge(const PolyForm& w) {
  Tensor A = to_tensor(w), R;
  R.p = 4 - A.p;
  for (const auto& tb : tuples(R.p)) {
    if (perm_sign(tb) == 0) continue;
    Poly acc;
    for (const auto& ta : tuples(A.p)) {
      Tuple full = ta;
      full.insert(full.end(), tb.begin(), tb.end());
      int eps = perm_sign(full);
      if (eps == 0) continue;
      int raise = 1;
      for (int a : ta) raise *= proca::sym::eta(a);
      Poly term = A.at(ta);
      if (eps * raise < 0) term = -term;
      acc += term;
    }
    acc *= CRational(proca::sym::Rational(1, factorial(A.p)));
    if (!acc.is_zero()) R.c[tb] = acc;
  }
  return from_tensor(R);
}

// (dw)_{a0..ap} = sum_j (-1)^j d_{aj} w_{a0..^aj..ap}.
inline PolyForm d(const PolyForm& w) {
  Tensor A = to_tensor(w), R;
  R.p = A.p + 1;
  if (R.p > 4) return PolyForm(R.p);
  for (const auto& t : tuples(R.p)) {
    if (perm_sign(t) == 0) continue;
    Poly acc;
    for (int j = 0; j < R.p; ++j) {
      Tuple rest;
      for (int k = 0; k < R.p; ++k) {
        if (k != j) rest.push_back(t[static_cast<std::size_t>(k)]);
      }
      Poly der = A.at(rest).derivative(t[static_cast<std::size_t>(j)]);
      if (j % 2 == 1) der = -der;
      acc += der;
    }
    if (!acc.is_zero()) R.c[t] = acc;
  }
  return from_tensor(R);
}

}  // namespace oracle

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "proca/fock/modes.hpp"

namespace proca::fock {

// Gaussian random transversal state on `grid`; the oracle fixtures draw their probes from this.
inline ModeState random_transversal(const ModeGrid& grid, double mass, std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  ModeState u(grid, mass);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    C4 v;
    for (auto& c : v) c = cplx(N(rng), N(rng));
    u.values[i] = project_transverse(v, u.k_lower(i), mass);
  }
  return u;
}

class TruncationOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One-particle vectors entering the quadratic observable W(h)^* W(h) with
// pi(W(h)) = a(K conj h) + b^*(K h).
struct ProbeModes {
  ModeState K_h;
  ModeState K_hbar;
};

// (1/n!) <a^*(S)^n Omega, W(h)^* W(h) a^*(S)^n Omega> with S normalised first:
// ||K h||^2 + n |<K conj h, S>|^2 ||S||^{2(n-1)}.
inline double expectation_quadratic(const ModeState& S_in, int n, const ProbeModes& p) {
  if (n < 0) throw std::invalid_argument("expectation_quadratic: n must be >= 0");
  const double s2 = norm2(S_in);
  if (!(s2 > 0)) throw std::invalid_argument("expectation_quadratic: S must be nonzero");
  ModeState S = S_in;
  S *= 1.0 / std::sqrt(s2);
  const double vac = norm2(p.K_h);
  if (n == 0) return vac;
  const double sn = std::pow(norm2(S), n - 1);
  return vac + n * std::norm(inner(p.K_hbar, S)) * sn;
}

// Symmetric Fock space over `modes` orthonormal one-particle modes with occupation <= cap per mode.
class TruncatedFock {
 public:
  using Mat = Eigen::MatrixXcd;
  using Vec = Eigen::VectorXcd;

  TruncatedFock(int modes, int cap) : modes_(modes), cap_(cap) {
    if (modes < 0 || cap < 0) throw std::invalid_argument("TruncatedFock: negative size");
    dim_ = 1;
    for (int i = 0; i < modes; ++i) dim_ *= cap + 1;
  }

  int dim() const { return dim_; }
  int modes() const { return modes_; }
  int cap() const { return cap_; }

  // Occupation of mode i in basis state s (mixed radix, mode 0 most significant).
  int occupation(int s, int i) const {
    for (int j = modes_ - 1; j > i; --j) s /= cap_ + 1;
    return s % (cap_ + 1);
  }

  Mat create(int i) const {
    Mat c = Mat::Zero(dim_, dim_);
    int stride = 1;
    for (int j = modes_ - 1; j > i; --j) stride *= cap_ + 1;
    for (int s = 0; s < dim_; ++s) {
      const int n = occupation(s, i);
      if (n < cap_) c(s + stride, s) = std::sqrt(static_cast<double>(n + 1));
    }
    return c;
  }
  Mat annihilate(int i) const { return create(i).adjoint(); }

  // c^*(u) = sum_i u_i c_i^*, c(u) = sum_i conj(u_i) c_i for coordinates u_i = <e_i, u>.
  Mat create(const Vec& u) const {
    Mat c = Mat::Zero(dim_, dim_);
    for (int i = 0; i < modes_; ++i) c += u(i) * create(i);
    return c;
  }
  Mat annihilate(const Vec& u) const { return create(u).adjoint(); }

  Vec vacuum() const {
    Vec v = Vec::Zero(dim_);
    v(0) = 1;
    return v;
  }

  // Diagonal projector onto basis states with every occupation below the cap.
  Mat below_cap() const {
    Mat p = Mat::Zero(dim_, dim_);
    for (int s = 0; s < dim_; ++s) {
      bool ok = true;
      for (int i = 0; i < modes_; ++i) ok = ok && occupation(s, i) < cap_;
      if (ok) p(s, s) = 1;
    }
    return p;
  }

 private:
  int modes_, cap_, dim_;
};

// Orthonormal basis of span(vs) under the one-particle inner product, with coordinates of every input.
struct ModeBasis {
  std::vector<ModeState> e;
  std::vector<Eigen::VectorXcd> coords;
};

inline ModeBasis gram_schmidt(const std::vector<const ModeState*>& vs, double rel_tol = 1e-12) {
  ModeBasis b;
  for (const ModeState* v : vs) {
    ModeState r = *v;
    const double n0 = std::sqrt(norm2(*v));
    for (const auto& e : b.e) {
      const cplx c = inner(e, r);
      for (std::size_t i = 0; i < r.values.size(); ++i) {
        for (int a = 0; a < 4; ++a) r.values[i][a] -= c * e.values[i][a];
      }
    }
    const double nr = std::sqrt(norm2(r));
    if (nr > rel_tol * n0 && nr > 0) {
      r *= 1.0 / nr;
      b.e.push_back(std::move(r));
    }
  }
  for (const ModeState* v : vs) {
    Eigen::VectorXcd c(static_cast<Eigen::Index>(b.e.size()));
    for (std::size_t i = 0; i < b.e.size(); ++i) c(static_cast<Eigen::Index>(i)) = inner(b.e[i], *v);
    b.coords.push_back(c);
  }
  return b;
}

// Brute-force matrix element on (F_s(h) x F_s(h)) truncated to the modes spanned by {S, K conj h} (a factor)
// and {K h} (b factor).
inline double fock_oracle(const ModeState& S_in, int n, const ProbeModes& p, int mode_budget, int occupation_cap) {
  if (mode_budget < 1 || mode_budget > 4) throw std::invalid_argument("fock_oracle: mode_budget must be in [1, 4]");
  if (occupation_cap < 0 || occupation_cap > 4) throw std::invalid_argument("fock_oracle: occupation_cap must be in [0, 4]");
  if (n < 0) throw std::invalid_argument("fock_oracle: n must be >= 0");
  if (n > occupation_cap) throw TruncationOverflow("fock_oracle: n exceeds the occupation cap");
  const double s2 = norm2(S_in);
  if (!(s2 > 0)) throw std::invalid_argument("fock_oracle: S must be nonzero");
  ModeState S = S_in;
  S *= 1.0 / std::sqrt(s2);

  ModeBasis A = gram_schmidt({&S, &p.K_hbar});
  ModeBasis B = gram_schmidt({&p.K_h});
  const int ma = static_cast<int>(A.e.size()), mb = static_cast<int>(B.e.size());
  if (ma + mb > mode_budget) throw std::invalid_argument("fock_oracle: spanned modes exceed mode_budget");
  if (mb > 0 && occupation_cap < 1) throw TruncationOverflow("fock_oracle: b^* needs occupation cap >= 1");

  TruncatedFock Fa(ma, occupation_cap), Fb(mb, occupation_cap);
  using Mat = TruncatedFock::Mat;
  auto kron = [](const Mat& x, const Mat& y) {
    Mat k(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      for (Eigen::Index j = 0; j < x.cols(); ++j) k.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
    return k;
  };
  const Mat Ia = Mat::Identity(Fa.dim(), Fa.dim()), Ib = Mat::Identity(Fb.dim(), Fb.dim());
  const Mat aS_dag = kron(Fa.create(A.coords[0]), Ib);
  const Mat a_hbar = kron(Fa.annihilate(A.coords[1]), Ib);
  const Mat bdag_h = mb > 0 ? kron(Ia, Fb.create(B.coords[0])) : Mat::Zero(aS_dag.rows(), aS_dag.cols());
  const Mat X = a_hbar + bdag_h;
  const Mat O = X.adjoint() * X;

  Eigen::VectorXcd psi = kron(Fa.vacuum(), Fb.vacuum());
  double nfact = 1;
  for (int j = 0; j < n; ++j) {
    psi = aS_dag * psi;
    nfact *= j + 1;
  }
  return (psi.adjoint() * O * psi)(0, 0).real() / nfact;
}

}  // namespace proca::fock

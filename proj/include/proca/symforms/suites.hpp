#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "proca/symforms/systems.hpp"

namespace proca::sym {

struct IdentityFailure {
  std::uint64_t seed = 0;
  std::string witness_printout;
};

struct IdentityReport {
  std::string identity_name;
  int trials = 0;
  std::vector<IdentityFailure> failures;

  bool ok() const { return failures.empty(); }

  nlohmann::json to_json() const {
    nlohmann::json f = nlohmann::json::array();
    for (const auto& x : failures) f.push_back({{"seed", x.seed}, {"witness_printout", x.witness_printout}});
    return {{"identity_name", identity_name}, {"trials", trials}, {"failures", f}};
  }
};

inline nlohmann::json to_json(const std::vector<IdentityReport>& reports) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : reports) a.push_back(r.to_json());
  return a;
}

inline bool all_ok(const std::vector<IdentityReport>& reports) {
  for (const auto& r : reports) {
    if (!r.ok()) return false;
  }
  return true;
}

// Deliberate defect injected into one identity, used to check that the harness reports it.
enum class Mutation { none, sign_flip };

struct SuiteOptions {
  SectionSampler sections{};
  SectionSampler backgrounds{2, 2, 3, 2};
  Mutation mutation = Mutation::none;
};

class IdentityViolation : public std::runtime_error {
 public:
  IdentityViolation(std::string name, std::string witness)
      : std::runtime_error("identity violated: " + name), name_(std::move(name)), witness_(std::move(witness)) {}
  const std::string& name() const { return name_; }
  const std::string& witness() const { return witness_; }

 private:
  std::string name_;
  std::string witness_;
};

// Throws IdentityViolation for the first failing report.
inline void require_ok(const std::vector<IdentityReport>& reports) {
  for (const auto& r : reports) {
    if (!r.ok()) throw IdentityViolation(r.identity_name, r.failures.front().witness_printout);
  }
}

// Integrand-level formal adjointness: conj(d_A Z)^*W - conj(Z)^*delta_A W - d(conj(Z)^*W).
inline PolyForm check_adjoint_exactform(const PolyForm& Z, const PolyForm& W, const PolyForm& A, const Rational& q) {
  if (Z.degree() + 1 != W.degree()) throw std::invalid_argument("check_adjoint_exactform: deg Z must be deg W - 1");
  PolyForm Zb = Z.conj();
  return wedge(dA(Z, A, q).conj(), hodge(W)) - wedge(Zb, hodge(deltaA(W, A, q))) - d(wedge(Zb, hodge(W)));
}

namespace detail {

inline std::mt19937_64 trial_rng(std::uint64_t trial_seed, std::uint64_t stream) {
  std::seed_seq ss{static_cast<std::uint32_t>(trial_seed), static_cast<std::uint32_t>(trial_seed >> 32),
                   static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(ss);
}

inline std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

struct Witness {
  std::ostringstream os;
  template <class T>
  Witness& add(const std::string& label, const T& v) {
    os << label << " = " << v << "\n";
    return *this;
  }
  Witness& form(const std::string& label, const PolyForm& w) {
    os << label << " = " << w.str() << "\n";
    return *this;
  }
};

// One sampled instance: the residual that must vanish and a printout of the inputs.
struct Instance {
  PolyForm residual;
  std::string inputs;
};

using IdentityCase = std::function<Instance(std::mt19937_64&, const SuiteOptions&)>;

struct CouplingSample {
  Rational q;
  PolyForm A;
  PolyForm F;
};

inline CouplingSample sample_coupling(std::mt19937_64& rng, const SuiteOptions& o) {
  Rational q;
  do q = o.backgrounds.rational(rng);
  while (sgn(q) == 0);
  PolyForm A = o.backgrounds.form(rng, 1, true);
  return {q, A, d(A)};
}

inline std::vector<std::pair<std::string, IdentityCase>> identity_cases() {
  std::vector<std::pair<std::string, IdentityCase>> cases;
  auto degree_in = [](std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  cases.emplace_back("dA_squared", [=](std::mt19937_64& rng, const SuiteOptions& o) {
    auto c = sample_coupling(rng, o);
    PolyForm w = o.sections.form(rng, degree_in(rng, 0, 3));
    CRational s = o.mutation == Mutation::sign_flip ? CRational(-1) : CRational(1);
    PolyForm r = dA(dA(w, c.A, c.q), c.A, c.q) - s * iq(c.q) * wedge(c.F, w);
    Witness wt;
    wt.add("q", c.q).form("A", c.A).form("omega", w);
    return Instance{r, wt.os.str()};
  });

  cases.emplace_back("deltaA_squared", [=](std::mt19937_64& rng, const SuiteOptions& o) {
    auto c = sample_coupling(rng, o);
    PolyForm w = o.sections.form(rng, degree_in(rng, 2, 4));
    PolyForm r = deltaA(deltaA(w, c.A, c.q), c.A, c.q) + iq(c.q) * F_ddot(c.F, w);
    Witness wt;
    wt.add("q", c.q).form("A", c.A).form("omega", w);
    return Instance{r, wt.os.str()};
  });

  cases.emplace_back("useful_identity", [](std::mt19937_64& rng, const SuiteOptions& o) {
    auto c = sample_coupling(rng, o);
    PolyForm j = -codiff(c.F);
    PolyForm W = o.sections.form(rng, 1);
    PolyForm r = deltaA(F_dot(c.F, W), c.A, c.q) + interior(j, W) + F_ddot(c.F, dA(W, c.A, c.q));
    Witness wt;
    wt.add("q", c.q).form("A", c.A).form("W", W);
    return Instance{r, wt.os.str()};
  });

  cases.emplace_back("dA_boxA", [=](std::mt19937_64& rng, const SuiteOptions& o) {
    auto c = sample_coupling(rng, o);
    PolyForm w = o.sections.form(rng, degree_in(rng, 0, 3));
    const auto& A = c.A;
    const auto& q = c.q;
    PolyForm r = dA(boxA(w, A, q), A, q) - boxA(dA(w, A, q), A, q) - iq(q) * deltaA(wedge(c.F, w), A, q);
    if (w.degree() > 0) r += iq(q) * wedge(c.F, deltaA(w, A, q));
    Witness wt;
    wt.add("q", q).form("A", A).form("omega", w);
    return Instance{r, wt.os.str()};
  });

  cases.emplace_back("deltaA_boxA", [=](std::mt19937_64& rng, const SuiteOptions& o) {
    auto c = sample_coupling(rng, o);
    PolyForm w = o.sections.form(rng, degree_in(rng, 1, 4));
    const auto& A = c.A;
    const auto& q = c.q;
    PolyForm r = deltaA(boxA(w, A, q), A, q) - boxA(deltaA(w, A, q), A, q) - iq(q) * F_ddot(c.F, dA(w, A, q));
    if (w.degree() >= 2) r += iq(q) * dA(F_ddot(c.F, w), A, q);
    Witness wt;
    wt.add("q", q).form("A", A).form("omega", w);
    return Instance{r, wt.os.str()};
  });

  cases.emplace_back("deltaA_KA_1form", [](std::mt19937_64& rng, const SuiteOptions& o) {
    auto c = sample_coupling(rng, o);
    Rational m2 = o.backgrounds.rational(rng);
    PolyForm w = o.sections.form(rng, 1);
    auto K = [&](const PolyForm& x) { return boxA(x, c.A, c.q) + CRational(m2) * x; };
    PolyForm r = deltaA(K(w), c.A, c.q) - K(deltaA(w, c.A, c.q)) - iq(c.q) * F_ddot(c.F, dA(w, c.A, c.q));
    Witness wt;
    wt.add("q", c.q).add("m2", m2).form("A", c.A).form("omega", w);
    return Instance{r, wt.os.str()};
  });

  cases.emplace_back("deltaA_PA_rearranged", [](std::mt19937_64& rng, const SuiteOptions& o) {
    auto c = sample_coupling(rng, o);
    Rational m2 = o.backgrounds.rational(rng);
    Rational kappa = o.backgrounds.rational(rng);
    PolyForm j = -codiff(c.F);
    PolyForm W = o.sections.form(rng, 1);
    const CRational I = iq(c.q);
    PolyForm PW = -deltaA(dA(W, c.A, c.q), c.A, c.q) + I * CRational(kappa) * F_dot(c.F, W) + CRational(m2) * W;
    PolyForm dW = deltaA(W, c.A, c.q);
    PolyForm expected = CRational(m2) * dW - I * CRational(kappa - 1) * F_ddot(c.F, dA(W, c.A, c.q)) -
                        I * CRational(kappa) * interior(j, W);
    PolyForm r = deltaA(PW, c.A, c.q) - expected;
    Witness wt;
    wt.add("q", c.q).add("m2", m2).add("kappa", kappa).form("A", c.A).form("W", W);
    return Instance{r, wt.os.str()};
  });

  cases.emplace_back("adjoint_exactform", [=](std::mt19937_64& rng, const SuiteOptions& o) {
    auto c = sample_coupling(rng, o);
    int p = degree_in(rng, 1, 4);
    PolyForm Z = o.sections.form(rng, p - 1);
    PolyForm W = o.sections.form(rng, p);
    PolyForm r = check_adjoint_exactform(Z, W, c.A, c.q);
    Witness wt;
    wt.add("q", c.q).form("A", c.A).form("Z", Z).form("W", W);
    return Instance{r, wt.os.str()};
  });

  cases.emplace_back("codiff_routes", [](std::mt19937_64& rng, const SuiteOptions& o) {
    auto c = sample_coupling(rng, o);
    PolyForm w = o.sections.form(rng, std::uniform_int_distribution<int>(1, 4)(rng));
    PolyForm r = deltaA(w, c.A, c.q) - deltaA_coord(w, c.A, c.q);
    Witness wt;
    wt.add("q", c.q).form("A", c.A).form("omega", w);
    return Instance{r, wt.os.str()};
  });

  cases.emplace_back("Fddot_routes", [](std::mt19937_64& rng, const SuiteOptions& o) {
    auto c = sample_coupling(rng, o);
    PolyForm H = o.sections.form(rng, 2);
    PolyForm r = F_ddot(c.F, H) - F_ddot_index(c.F, H);
    Witness wt;
    wt.form("A", c.A).form("H", H);
    return Instance{r, wt.os.str()};
  });

  return cases;
}

inline std::string residual_witness(std::uint64_t trial_seed, const Instance& inst) {
  std::ostringstream os;
  os << "trial_seed = " << trial_seed << "\n" << inst.inputs << "residual = " << inst.residual.str();
  return os.str();
}

}  // namespace detail

inline std::vector<std::string> identity_suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : detail::identity_cases()) names.push_back(name);
  return names;
}

// Trial t draws its sections from seed + t; each identity has its own stream.
inline std::vector<IdentityReport> check_identity_suite(std::uint64_t seed, int trials, const SuiteOptions& opt = {}) {
  if (trials < 1) throw std::invalid_argument("check_identity_suite: trials must be >= 1");
  std::vector<IdentityReport> reports;
  for (const auto& [name, fn] : detail::identity_cases()) {
    IdentityReport rep{name, trials, {}};
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t ts = seed + static_cast<std::uint64_t>(t);
      auto rng = detail::trial_rng(ts, detail::name_hash(name));
      detail::Instance inst = fn(rng, opt);
      if (!inst.residual.is_zero()) rep.failures.push_back({ts, detail::residual_witness(ts, inst)});
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

namespace detail {

inline std::vector<StructureSystem> instantiate(SystemTag tag, const Background& b0, std::mt19937_64& rng,
                                                const SuiteOptions& opt) {
  switch (tag) {
    case SystemTag::neutral: return {neutral_system(b0)};
    case SystemTag::neutral_alt: return {neutral_alt_system(b0, 1), neutral_alt_system(b0, 2), neutral_alt_system(b0, 3)};
    case SystemTag::multiplet: {
      std::vector<StructureSystem> out;
      for (int k = 1; k <= 3; ++k) out.push_back(multiplet_system(random_background(rng, opt.backgrounds, k)));
      return out;
    }
    case SystemTag::charged: return {charged_system(b0)};
    case SystemTag::proca_scalar: return {proca_scalar_system(b0)};
  }
  return {};
}

inline std::string background_printout(const Background& b) {
  std::ostringstream os;
  os << "q = " << b.q << "\nkappa = " << b.kappa << "\nm2 = " << b.m2 << "\nmm2 = " << b.mm2 << "\nA = " << b.A.str()
     << "\nv = " << b.v.str() << "\n";
  for (std::size_t a = 0; a < b.rho.size(); ++a) {
    for (std::size_t c = 0; c < b.rho.size(); ++c) os << "rho[" << a << "][" << c << "] = " << b.rho[a][c].str() << "\n";
  }
  return os.str();
}

}  // namespace detail

// Structural conditions of the auxiliary-field construction for one system family.
inline std::vector<IdentityReport> check_structure_suite(SystemTag tag, std::uint64_t seed, int trials,
                                                         const SuiteOptions& opt = {}) {
  if (trials < 1) throw std::invalid_argument("check_structure_suite: trials must be >= 1");
  std::vector<IdentityReport> reports;
  auto report_for = [&](const std::string& name) -> IdentityReport& {
    for (auto& r : reports) {
      if (r.identity_name == name) return r;
    }
    reports.push_back({name, trials, {}});
    return reports.back();
  };
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t ts = seed + static_cast<std::uint64_t>(t);
    auto rng = detail::trial_rng(ts, detail::name_hash(to_string(tag)));
    Background b = random_background(rng, opt.backgrounds, 1);
    for (const auto& sys : detail::instantiate(tag, b, rng, opt)) {
      for (const auto& id : structure_identities(sys)) {
        std::vector<PolyForm> x;
        for (int deg : id.lhs.in_degrees()) x.push_back(opt.sections.form(rng, deg));
        auto lhs = id.lhs(x);
        auto rhs = id.rhs(x);
        IdentityReport& rep = report_for(id.name);
        bool zero = true;
        std::ostringstream res;
        for (std::size_t i = 0; i < lhs.size(); ++i) {
          PolyForm r = lhs[i] - rhs[i];
          if (!r.is_zero()) {
            zero = false;
            res << "residual[" << i << "] = " << r.str() << "\n";
          }
        }
        if (!zero) {
          std::ostringstream os;
          os << "trial_seed = " << ts << "\n" << detail::background_printout(b);
          for (std::size_t i = 0; i < x.size(); ++i) os << "x[" << i << "] = " << x[i].str() << "\n";
          os << res.str();
          rep.failures.push_back({ts, os.str()});
        }
      }
    }
  }
  return reports;
}

inline std::vector<SystemTag> all_systems() {
  return {SystemTag::neutral, SystemTag::neutral_alt, SystemTag::multiplet, SystemTag::charged,
          SystemTag::proca_scalar};
}

}  // namespace proca::sym

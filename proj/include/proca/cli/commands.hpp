#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "proca/blockops/green.hpp"
#include "proca/cli/config.hpp"
#include "proca/fock/fock.hpp"
#include "proca/lattice/systems.hpp"
#include "proca/symforms/suites.hpp"

namespace proca::cli {

enum ExitCode : int { exit_pass = 0, exit_config = 1, exit_verification = 2, exit_internal = 3 };

struct Outcome {
  int code = exit_pass;
  std::string summary;
};

// Writes <dir>/<name> files that all carry the schema version, the command and the resolved config.
class OutputDir {
 public:
  OutputDir(const RunConfig& cfg, std::string command) : dir_(cfg.out), command_(std::move(command)), config_(cfg.to_json()) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_)) throw ConfigError("cannot create output directory '" + dir_ + "'");
  }

  void json(const std::string& name, const nlohmann::json& result) const {
    nlohmann::json doc{{"schema_version", schema_version}, {"command", command_}, {"config", config_}, {"result", result}};
    open(name) << doc.dump(2) << '\n';
  }

  // CSV preceded by '#' comment lines holding the same envelope; floats use 17 significant digits.
  std::ofstream csv(const std::string& name, const std::string& header) const {
    std::ofstream os = open(name);
    os << "# schema_version=" << schema_version << "\n# command=" << command_ << "\n# config=" << config_.dump() << '\n'
       << header << '\n'
       << std::setprecision(17);
    return os;
  }

 private:
  std::ofstream open(const std::string& name) const {
    const std::string path = (std::filesystem::path(dir_) / name).string();
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot write '" + path + "'");
    return os;
  }

  std::string dir_, command_;
  nlohmann::json config_;
};

namespace detail {

inline std::string sci(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << v;
  return os.str();
}

template <class Fn>
auto validated(const std::string& what, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// identities

inline std::vector<sym::SystemTag> parse_systems(const std::string& spec) {
  if (spec == "all") return sym::all_systems();
  std::vector<sym::SystemTag> tags;
  if (spec == "none") return tags;
  for (const auto& s : detail::split(spec, ',')) {
    try {
      tags.push_back(sym::system_from_string(s));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("identities.systems: ") + e.what());
    }
  }
  return tags;
}

inline Outcome cmd_identities(const RunConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("identities.trials must be >= 1");
  sym::SuiteOptions opt;
  if (cfg.mutate == "sign-flip") {
    opt.mutation = sym::Mutation::sign_flip;
  } else if (cfg.mutate != "none") {
    throw ConfigError("identities.mutate must be none or sign-flip");
  }
  const auto tags = parse_systems(cfg.systems);
  OutputDir out(cfg, "identities");

  std::vector<std::pair<std::string, std::vector<sym::IdentityReport>>> suites;
  suites.emplace_back("identities", sym::check_identity_suite(cfg.seed, cfg.trials, opt));
  for (auto tag : tags) suites.emplace_back(sym::to_string(tag), sym::check_structure_suite(tag, cfg.seed, cfg.trials, opt));

  nlohmann::json result = nlohmann::json::object();
  auto os = out.csv("identities.csv", "suite,identity,trials,failures,first_failing_seed");
  std::vector<std::string> violated;
  std::size_t count = 0;
  for (const auto& [suite, reports] : suites) {
    result[suite] = sym::to_json(reports);
    for (const auto& r : reports) {
      ++count;
      os << suite << ',' << r.identity_name << ',' << r.trials << ',' << r.failures.size() << ',';
      if (!r.ok()) {
        os << r.failures.front().seed;
        violated.push_back(suite + "/" + r.identity_name + " (seed " + std::to_string(r.failures.front().seed) + ")");
      }
      os << '\n';
    }
  }
  result["pass"] = violated.empty();
  out.json("identities.json", result);
  if (!violated.empty()) {
    std::string s = "identity violated:";
    for (const auto& v : violated) s += " " + v;
    return {exit_verification, s};
  }
  return {exit_pass, std::to_string(count) + " identities hold over " + std::to_string(cfg.trials) + " trials"};
}

// ---------------------------------------------------------------------------------------------
// green

namespace detail {

struct SourceTerm {
  const char* label;
  sym::IndexMask mask;
  std::array<double, 3> centre;  // in units of L
  lat::cplx coeff;
};

inline const std::vector<SourceTerm>& source_catalogue() {
  static const std::vector<SourceTerm> terms{{"t", 0b0001, {0.48, 0.40, 0.56}, {1, 0}},
                                             {"x", 0b0010, {0.32, 0.48, 0.48}, {0.5, 0.2}},
                                             {"y", 0b0100, {0.40, 0.56, 0.32}, {0, -0.8}},
                                             {"z", 0b1000, {0.56, 0.56, 0.24}, {-0.3, 0}}};
  return terms;
}

inline lat::TimeBump source_time(const lat::Grid& g) { return {g.T / 2, g.T / 3, 8}; }

// Band-limited bump 1-form for a catalogue label; "mixed" sums all components.
inline lat::AnalyticField green_source(const std::string& label, const lat::Grid& g) {
  lat::AnalyticField J(1, g.L);
  bool found = false;
  for (const auto& s : source_catalogue()) {
    if (label != "mixed" && label != s.label) continue;
    const std::array<double, 3> x0{s.centre[0] * g.L, s.centre[1] * g.L, s.centre[2] * g.L};
    J += lat::bump_form(1, g.L, s.mask, source_time(g), lat::spatial_bump(x0, 2, g.L), s.coeff);
    found = true;
  }
  if (!found) throw ConfigError("green.sources: unknown source '" + label + "' (t, x, y, z, mixed)");
  return J;
}

inline lat::AnalyticField scalar_source(const lat::Grid& g) {
  return lat::bump_form(0, g.L, 0, source_time(g), lat::spatial_bump({0.4 * g.L, 0.4 * g.L, 0.4 * g.L}, 2, g.L), 0.8);
}

inline lat::AnalyticField background_potential(const lat::Grid& g) {
  const lat::TimeBump b{g.T / 2, g.T / 3, 8};
  lat::AnalyticField A(1, g.L);
  A += lat::bump_form(1, g.L, 0b0001, b, lat::spatial_bump({0.40 * g.L, 0.48 * g.L, 0.48 * g.L}, 1, g.L), 1.0);
  A += lat::bump_form(1, g.L, 0b0010, b, lat::spatial_bump({0.48 * g.L, 0.48 * g.L, 0.40 * g.L}, 1, g.L), -0.7);
  A += lat::bump_form(1, g.L, 0b1000, b, lat::spatial_bump({0.48 * g.L, 0.40 * g.L, 0.40 * g.L}, 1, g.L), 0.5);
  return A;
}

inline lat::FieldGreen neutral_green(double m) {
  auto side = [m](lat::Orientation o) {
    return lat::FieldMap{"E", {1}, {1}, blk::SupportAction::local,
                         [m, o](const lat::Fields& x) { return lat::Fields{lat::proca_green(x[0], m, o)}; }};
  };
  lat::FieldMap P{"P", {1}, {1}, blk::SupportAction::local,
                  [m](const lat::Fields& x) { return lat::Fields{lat::proca_operator(x[0], m)}; }};
  return {side(lat::Orientation::retarded), side(lat::Orientation::advanced), P};
}

// Largest sample of the solution outside the causal side of the source, relative to its peak.
inline double causal_leakage(const lat::Fields& u, const lat::Fields& src, bool retarded) {
  int lo = -1, hi = -1;
  for (const auto& s : src) {
    const auto [a, b] = s.time_support();
    if (a < 0) continue;
    lo = lo < 0 ? a : std::min(lo, a);
    hi = std::max(hi, b);
  }
  double leak = 0, peak = 0;
  for (const auto& x : u) {
    peak = std::max(peak, x.max_abs());
    if (lo < 0) continue;
    leak = std::max(leak, retarded ? x.max_abs_range(0, lo - 1) : x.max_abs_range(hi + 1, x.grid().Nt - 1));
  }
  return peak > 0 ? leak / peak : leak;
}

}  // namespace detail

struct RefinementRow {
  std::string source;
  int nt_fine = 0, nt_coarse = 0;
  double fine = 0, coarse = 0, slope = 0;
  bool pass = false;
};

struct GreenRun {
  std::string system;
  std::vector<blk::ResidualReport> reports;
  std::vector<RefinementRow> refinement;
};

// Checks the green settings and returns the labelled analytic sources.
inline std::vector<std::pair<std::string, lat::AnalyticField>> validate_green(const RunConfig& cfg) {
  lat::Grid g = cfg.grid;
  detail::validated("grid", [&] { g.validate(); return 0; });
  if (g.N < 8) throw ConfigError("grid.N must be >= 8 for the band-limited sources");
  if (detail::source_time(g).lo() <= g.t_pad) throw ConfigError("grid.t_pad leaves no room for the sources");
  if (!(cfg.mass > 0) || !(cfg.scalar_mass > 0)) throw ConfigError("physics: masses must be positive");
  if (cfg.born_order < 0) throw ConfigError("physics.born_order must be >= 0");
  if (!(cfg.green_tolerance > 0) || !(cfg.leak_tolerance > 0)) throw ConfigError("green: tolerances must be positive");
  const std::string& sys = cfg.system;
  if (sys != "neutral" && sys != "charged" && sys != "proca-scalar") {
    throw ConfigError("physics.system must be neutral, charged or proca-scalar for green");
  }
  std::vector<std::pair<std::string, lat::AnalyticField>> sources;
  for (const auto& label : detail::split(cfg.sources, ',')) {
    if (label.empty()) continue;
    sources.emplace_back(label, detail::green_source(label, g));
  }
  if (sources.empty()) throw ConfigError("green.sources: empty source list");
  if (cfg.refine && sys == "neutral") {
    lat::Grid coarse = g;
    coarse.Nt = g.Nt / 2;
    detail::validated("refinement grid", [&] { coarse.validate(); return 0; });
  }
  return sources;
}

// G1-G3 on every source, the Proca constraint and the dt-halving study (neutral system only).
inline GreenRun run_green(const RunConfig& cfg) {
  const auto sources = validate_green(cfg);
  lat::Grid g = cfg.grid;
  g.workers = cfg.workers;
  lat::Grid coarse = g;
  coarse.Nt = g.Nt / 2;
  const std::string& sys = cfg.system;
  const bool refine = cfg.refine && sys == "neutral";

  // The coupled systems capture `this`; keep them alive alongside E.
  std::unique_ptr<lat::ChargedProca> charged;
  std::unique_ptr<lat::ProcaScalar> scalar;
  lat::FieldGreen E;
  if (sys == "neutral") {
    E = detail::neutral_green(cfg.mass);
  } else if (sys == "charged") {
    charged = std::make_unique<lat::ChargedProca>(
        lat::ChargedBackground{cfg.q, cfg.kappa, cfg.mass, detail::background_potential(g)}, g);
    E = charged->E_P(cfg.born_order);
  } else {
    scalar = std::make_unique<lat::ProcaScalar>(
        lat::ProcaScalarBackground{cfg.mass, cfg.scalar_mass, cfg.lambda, detail::background_potential(g)}, g);
    E = scalar->E_P(cfg.born_order);
  }

  std::vector<blk::LabelledSource<lat::LatticeField>> labelled;
  for (const auto& [label, J] : sources) {
    lat::Fields x{J.sample(g)};
    if (sys == "proca-scalar") x.push_back(detail::scalar_source(g).sample(g));
    labelled.push_back({label, x});
  }
  std::vector<blk::ResidualReport> reports;
  reports.push_back(blk::verify_green_axioms<lat::LatticeField>(E, labelled, cfg.green_tolerance, detail::causal_leakage,
                                                                cfg.leak_tolerance));
  if (sys == "neutral") {
    blk::ResidualReport con{"proca-constraint", cfg.green_tolerance, {}};
    for (std::size_t i = 0; i < sources.size(); ++i) {
      const lat::LatticeField dJ = lat::codiff(sources[i].second).sample(g);
      for (bool ret : {true, false}) {
        lat::LatticeField mdW = lat::codiff(E.get(ret)(labelled[i].value)[0]);
        mdW *= cfg.mass * cfg.mass;
        mdW -= dJ;
        con.add("m^2 delta W - delta J", sources[i].first, ret ? "retarded" : "advanced", mdW.norm_interior(),
                dJ.norm_interior());
      }
    }
    reports.push_back(con);
  }

  std::vector<RefinementRow> rows;
  if (refine) {
    auto residual = [&](const lat::AnalyticField& J, const lat::Grid& grid) {
      const lat::LatticeField f = J.sample(grid);
      return lat::relative_residual(lat::proca_operator(lat::proca_green(f, cfg.mass, lat::Orientation::retarded), cfg.mass), f);
    };
    for (const auto& [label, J] : sources) {
      RefinementRow r{label, g.Nt, coarse.Nt, residual(J, g), residual(J, coarse), 0, false};
      r.slope = std::log(r.coarse / r.fine) / std::log(coarse.dt() / g.dt());
      r.pass = r.slope >= cfg.refine_min_slope;
      rows.push_back(r);
    }
  }

  return {sys, reports, rows};
}

inline Outcome cmd_green(const RunConfig& cfg) {
  validate_green(cfg);
  OutputDir out(cfg, "green");
  const GreenRun run = run_green(cfg);
  const std::string& sys = run.system;
  const bool refine = !run.refinement.empty();
  const auto& reports = run.reports;
  const auto& rows = run.refinement;
  nlohmann::json result{{"system", sys}, {"reports", nlohmann::json::array()}};
  bool ok = true;
  double worst = 0;
  {
    auto os = out.csv("green.csv", "report,check,source,orientation,norm,reference,relative,pass");
    for (const auto& rep : reports) {
      result["reports"].push_back(rep.to_json());
      ok = ok && rep.ok();
      for (const auto& e : rep.entries) {
        os << rep.name << ',' << e.check << ',' << e.source << ',' << e.orientation << ',' << e.norm << ',' << e.reference
           << ',' << e.relative << ',' << (e.pass ? "true" : "false") << '\n';
        if (e.check != "G3") worst = std::max(worst, e.relative);
      }
    }
  }
  nlohmann::json ref = nlohmann::json::array();
  double min_slope = INFINITY;
  if (refine) {
    auto os = out.csv("green_refinement.csv", "source,nt_fine,nt_coarse,residual_fine,residual_coarse,slope,pass");
    for (const auto& r : rows) {
      os << r.source << ',' << r.nt_fine << ',' << r.nt_coarse << ',' << r.fine << ',' << r.coarse << ',' << r.slope << ','
         << (r.pass ? "true" : "false") << '\n';
      ref.push_back({{"source", r.source}, {"nt_fine", r.nt_fine}, {"nt_coarse", r.nt_coarse}, {"residual_fine", r.fine},
                     {"residual_coarse", r.coarse}, {"slope", r.slope}, {"pass", r.pass}});
      ok = ok && r.pass;
      min_slope = std::min(min_slope, r.slope);
    }
  }
  result["refinement"] = ref;
  result["pass"] = ok;
  out.json("green.json", result);
  std::string s = sys + ": max residual " + detail::sci(worst);
  if (refine) s += ", min refinement slope " + detail::sci(min_slope);
  return {ok ? exit_pass : exit_verification, s};
}

// ---------------------------------------------------------------------------------------------
// malus

namespace detail {

inline det::DetectorConfig checked_detector(const RunConfig& cfg) {
  det::DetectorConfig d = cfg.detector();
  d.grid.workers = cfg.workers;
  validated("detector", [&] { d.validate(); return 0; });
  return d;
}

inline double angle_distance_mod_pi(double a, double b) {
  double d = std::fmod(std::abs(a - b), lat::pi);
  return std::min(d, lat::pi - d);
}

}  // namespace detail

inline Outcome cmd_malus(const RunConfig& cfg) {
  const det::DetectorConfig dc = detail::checked_detector(cfg);
  const det::ModeProfile p = cfg.malus_profile();
  detail::validated("profile", [&] { p.validate(); return 0; });
  for (int c : cfg.profile_grid) {
    if (c < 2) throw ConfigError("profile.grid: at least 2 nodes per axis");
  }
  if (cfg.thetas < 8) throw ConfigError("malus.thetas must be >= 8");
  if (!(cfg.fit_tolerance > 0) || !(cfg.eta_tolerance > 0)) throw ConfigError("malus: tolerances must be positive");
  const det::PolarizationQubit sigma = parse_sigma(cfg.sigma);
  const std::string kind = detail::trim(cfg.sigma.substr(0, cfg.sigma.find(':')));
  OutputDir out(cfg, "malus");

  const det::Detector D(dc);
  std::vector<double> thetas;
  for (int i = 0; i < cfg.thetas; ++i) thetas.push_back(lat::pi * i / cfg.thetas);
  const det::MalusReport m = D.malus_sweep(sigma, p, p.box_grid(cfg.profile_grid), thetas);

  bool ok = m.fit.relative_residual < cfg.fit_tolerance;
  nlohmann::json checks{{"fit_residual_ok", ok}};
  if (kind == "linear") {
    const double eta = detail::parse_double("malus.sigma", cfg.sigma.substr(cfg.sigma.find(':') + 1));
    const double err = detail::angle_distance_mod_pi(m.fit.eta, eta);
    checks["eta_error"] = err;
    checks["eta_ok"] = err <= cfg.eta_tolerance;
    ok = ok && err <= cfg.eta_tolerance;
  }
  if (kind == "circular") {
    checks["flat_required"] = true;
    ok = ok && m.fit.flat;
  }
  {
    auto os = out.csv("malus.csv", "theta,R,fit_residual");
    for (std::size_t i = 0; i < m.theta.size(); ++i) os << m.theta[i] << ',' << m.R[i] << ',' << m.fit_residual[i] << '\n';
  }
  nlohmann::json result = m.to_json();
  result["checks"] = checks;
  result["pass"] = ok;
  out.json("malus.json", result);
  return {ok ? exit_pass : exit_verification, "fit residual " + detail::sci(m.fit.relative_residual) + ", eta " +
                                                   detail::sci(m.fit.eta) + ", flat " + (m.fit.flat ? "yes" : "no")};
}

// ---------------------------------------------------------------------------------------------
// displace

inline Outcome cmd_displace(const RunConfig& cfg) {
  const det::DetectorConfig dc = detail::checked_detector(cfg);
  const det::ModeProfile p = cfg.displacement_profile();
  detail::validated("displace_profile", [&] { p.validate(); return 0; });
  if (cfg.deltas < 2) throw ConfigError("displace.deltas must be >= 2");
  if (!(cfg.delta_min > 0 && cfg.delta_max > cfg.delta_min)) throw ConfigError("displace: need 0 < delta_min < delta_max");
  if (!(cfg.slope_tolerance > 0)) throw ConfigError("displace.tolerance must be positive");
  if (!(cfg.budget.points_per_period > 0) || cfg.budget.min_nodes_per_axis < 2 || cfg.budget.max_nodes < 8) {
    throw ConfigError("displace: bad grid budget");
  }
  const auto& e = cfg.e;
  const double ee = e[0] * e[0] - e[1] * e[1] - e[2] * e[2] - e[3] * e[3];
  std::string type;
  if (std::abs(ee - 1) <= 1e-9) {
    type = "timelike";
  } else if (std::abs(ee + 1) <= 1e-9) {
    type = "spacelike";
  } else if (std::abs(ee) <= 1e-9) {
    type = "null";
  } else {
    throw ConfigError("displace.e: eta(e, e) must be +1, -1 or 0");
  }
  OutputDir out(cfg, "displace");

  std::vector<double> ds;
  for (int i = 0; i < cfg.deltas; ++i) {
    ds.push_back(cfg.delta_min * std::pow(cfg.delta_max / cfg.delta_min, static_cast<double>(i) / (cfg.deltas - 1)));
  }
  const det::Detector D(dc);
  det::DisplacementReport r;
  try {
    r = D.displaced_form_factor(p, e, ds, cfg.budget);
  } catch (const det::PhaseAliasing& x) {
    throw ConfigError(x.what());
  }

  // Along a timelike e the amplitude follows the stationary-phase power law; spacelike shifts decay faster than delta^-4.
  bool ok = true;
  nlohmann::json checks{{"causal_type", type}};
  if (type == "timelike") {
    checks["slope_error"] = std::abs(r.slope - cfg.expected_slope);
    ok = std::abs(r.slope - cfg.expected_slope) <= cfg.slope_tolerance;
  } else if (type == "spacelike") {
    ok = r.delta4_decreasing;
  }
  checks["pass"] = ok;
  {
    auto os = out.csv("displace.csv", "delta,abs_A,delta4_abs_A");
    for (std::size_t i = 0; i < ds.size(); ++i) os << ds[i] << ',' << r.abs_A[i] << ',' << std::pow(ds[i], 4) * r.abs_A[i] << '\n';
  }
  nlohmann::json result = r.to_json();
  result["checks"] = checks;
  result["pass"] = ok;
  out.json("displace.json", result);
  return {ok ? exit_pass : exit_verification,
          type + " e, slope " + detail::sci(r.slope) + ", delta^4 decreasing " + (r.delta4_decreasing ? "yes" : "no")};
}

// ---------------------------------------------------------------------------------------------
// oracle

// Up to three spatial covectors sharing one transverse direction; weights are arbitrary but fixed.
inline fock::ModeGrid oracle_modes(int modes) {
  fock::ModeGrid m;
  std::vector<double> kz{0.5, 0.9, 1.4};
  kz.resize(static_cast<std::size_t>(modes));
  m.axes = {std::vector<double>{0.3}, std::vector<double>{-0.2}, kz};
  m.weight = 0.7;
  return m;
}

struct OracleRow {
  int n = 0, trial = 0;
  double closed = 0, brute = 0, diff = 0;
};

inline std::vector<OracleRow> oracle_table(std::uint64_t seed, int n_max, int modes, int trials, double mass) {
  std::mt19937_64 rng(seed);
  const fock::ModeGrid grid = oracle_modes(modes);
  std::vector<OracleRow> rows;
  for (int n = 0; n <= n_max; ++n) {
    for (int t = 0; t < trials; ++t) {
      const fock::ModeState S = fock::random_transversal(grid, mass, rng), Kh = fock::random_transversal(grid, mass, rng),
                            Khb = fock::random_transversal(grid, mass, rng);
      OracleRow r{n, t, fock::expectation_quadratic(S, n, {Kh, Khb}), fock::fock_oracle(S, n, {Kh, Khb}, 3, std::max(n, 1))};
      r.diff = std::abs(r.closed - r.brute);
      rows.push_back(r);
    }
  }
  return rows;
}

inline Outcome cmd_oracle(const RunConfig& cfg) {
  if (cfg.oracle_n_max < 0 || cfg.oracle_n_max > 4) throw ConfigError("oracle.n_max must lie in [0, 4]");
  if (cfg.oracle_modes < 1 || cfg.oracle_modes > 3) throw ConfigError("oracle.modes must lie in [1, 3]");
  if (cfg.oracle_trials < 1) throw ConfigError("oracle.trials must be >= 1");
  if (!(cfg.oracle_tolerance > 0)) throw ConfigError("oracle.tolerance must be positive");
  if (!(cfg.mass > 0)) throw ConfigError("physics.m must be positive");
  OutputDir out(cfg, "oracle");
  const auto rows = oracle_table(cfg.seed, cfg.oracle_n_max, cfg.oracle_modes, cfg.oracle_trials, cfg.mass);
  double worst = 0;
  nlohmann::json table = nlohmann::json::array();
  {
    auto os = out.csv("oracle.csv", "n,trial,closed_form,brute_force,abs_diff");
    for (const auto& r : rows) {
      os << r.n << ',' << r.trial << ',' << r.closed << ',' << r.brute << ',' << r.diff << '\n';
      table.push_back({{"n", r.n}, {"trial", r.trial}, {"closed_form", r.closed}, {"brute_force", r.brute}, {"abs_diff", r.diff}});
      worst = std::max(worst, r.diff);
    }
  }
  const bool ok = worst < cfg.oracle_tolerance;
  out.json("oracle.json", {{"rows", table}, {"max_abs_diff", worst}, {"pass", ok}});
  return {ok ? exit_pass : exit_verification, "max abs diff " + detail::sci(worst)};
}

}  // namespace proca::cli

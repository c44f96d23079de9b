#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <variant>
#include <vector>

#include "json.hpp"
#include "proca/detector/detector.hpp"

namespace proca::cli {

inline constexpr int schema_version = 1;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

// Plain number, or a multiple of pi written "pi", "4pi" or "4*pi".
inline double parse_double(const std::string& key, const std::string& raw) {
  std::string s = trim(raw);
  double factor = 1;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = lat::pi;
    s = trim(s.substr(0, s.size() - 2));
    if (!s.empty() && s.back() == '*') s = trim(s.substr(0, s.size() - 1));
    if (s.empty()) return factor;
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v * factor;
  } catch (const std::exception&) {
  }
  throw ConfigError(key + ": expected a number, got '" + raw + "'");
}

inline long long parse_integer(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(key + ": expected an integer, got '" + raw + "'");
}

inline bool parse_bool(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + raw + "'");
}

template <std::size_t K>
std::array<double, K> parse_vector(const std::string& key, const std::string& raw) {
  const auto parts = split(raw, ',');
  if (parts.size() != K) throw ConfigError(key + ": expected " + std::to_string(K) + " comma-separated numbers");
  std::array<double, K> v{};
  for (std::size_t i = 0; i < K; ++i) v[i] = parse_double(key, parts[i]);
  return v;
}

}  // namespace detail

// Resolved settings for every subcommand. Keys are "section.name"; see README for the schema.
struct RunConfig {
  // [run]
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out = ".";

  // [grid], [physics]
  lat::Grid grid{};
  std::string system = "neutral";
  double mass = 1;
  double scalar_mass = 0.8;
  double q = 0.1;
  double kappa = 2.22;
  double lambda = 0.01;
  double theta = 0;
  int n = 1;
  int born_order = 2;

  // [identities]
  int trials = 50;
  std::string mutate = "none";
  std::string systems = "all";

  // [green]
  std::string sources = "t,x,z,mixed";
  double green_tolerance = 1e-6;
  double leak_tolerance = 1e-10;
  bool refine = true;
  double refine_min_slope = 3.5;

  // [rho], [f]
  det::SpaceTimeWindow rho = det::DetectorConfig{}.rho;
  det::SpaceTimeWindow f = det::DetectorConfig{}.f;

  // [profile] drives malus; [displace_profile] drives displace.
  det::ModeProfile profile = default_profile();
  std::array<int, 3> profile_grid{16, 16, 24};
  det::ModeProfile displace_profile = default_displace_profile();

  // [malus]
  std::string sigma = "linear:0";
  int thetas = 16;
  double fit_tolerance = 0.01;
  double eta_tolerance = 0.01;

  // [displace]
  std::array<double, 4> e{std::sqrt(2.0), 0, 0, -1};
  double delta_min = 30;
  double delta_max = 300;
  int deltas = 6;
  double expected_slope = -1.5;
  double slope_tolerance = 0.15;
  det::GridBudget budget{};

  // [oracle]
  int oracle_n_max = 3;
  int oracle_modes = 3;
  int oracle_trials = 10;
  double oracle_tolerance = 1e-10;

  static det::ModeProfile default_profile() {
    det::ModeProfile p;
    p.alpha_max = 0.1;
    p.sigma_k = 0.2;
    p.sigma_alpha = 0.05;
    p.focus_t = 5;
    return p;
  }

  // Wide cone, no Gaussian core: the asymptotic regime sets in within delta in [30, 300].
  static det::ModeProfile default_displace_profile() {
    det::ModeProfile p;
    p.alpha_max = 0.6;
    p.focus_t = 5;
    return p;
  }

  static_assert(std::is_same_v<std::size_t, std::uint64_t>, "displace.max_nodes is stored as a 64-bit count");
  using Slot = std::variant<double*, int*, std::uint64_t*, std::string*, bool*, std::array<double, 3>*,
                            std::array<double, 4>*, std::array<int, 3>*>;

  std::vector<std::pair<std::string, Slot>> slots() {
    std::vector<std::pair<std::string, Slot>> s{
        {"run.seed", &seed},
        {"run.workers", &workers},
        {"run.out", &out},
        {"grid.L", &grid.L},
        {"grid.N", &grid.N},
        {"grid.T", &grid.T},
        {"grid.Nt", &grid.Nt},
        {"grid.t_pad", &grid.t_pad},
        {"physics.system", &system},
        {"physics.m", &mass},
        {"physics.scalar_mass", &scalar_mass},
        {"physics.q", &q},
        {"physics.kappa", &kappa},
        {"physics.lambda", &lambda},
        {"physics.theta", &theta},
        {"physics.n", &n},
        {"physics.born_order", &born_order},
        {"identities.trials", &trials},
        {"identities.mutate", &mutate},
        {"identities.systems", &systems},
        {"green.sources", &sources},
        {"green.tolerance", &green_tolerance},
        {"green.leak_tolerance", &leak_tolerance},
        {"green.refine", &refine},
        {"green.refine_min_slope", &refine_min_slope},
        {"malus.sigma", &sigma},
        {"malus.thetas", &thetas},
        {"malus.tolerance", &fit_tolerance},
        {"malus.eta_tolerance", &eta_tolerance},
        {"displace.e", &e},
        {"displace.delta_min", &delta_min},
        {"displace.delta_max", &delta_max},
        {"displace.deltas", &deltas},
        {"displace.slope", &expected_slope},
        {"displace.tolerance", &slope_tolerance},
        {"displace.points_per_period", &budget.points_per_period},
        {"displace.min_nodes_per_axis", &budget.min_nodes_per_axis},
        {"displace.max_nodes", &budget.max_nodes},
        {"oracle.n_max", &oracle_n_max},
        {"oracle.modes", &oracle_modes},
        {"oracle.trials", &oracle_trials},
        {"oracle.tolerance", &oracle_tolerance},
        {"profile.grid", &profile_grid},
    };
    for (auto [name, w] : {std::pair<const char*, det::SpaceTimeWindow*>{"rho", &rho}, {"f", &f}}) {
      const std::string p = name;
      s.push_back({p + ".t_center", &w->time.center});
      s.push_back({p + ".t_half_width", &w->time.half_width});
      s.push_back({p + ".t_power", &w->time.power});
      s.push_back({p + ".x_center", &w->centre});
      s.push_back({p + ".x_power", &w->power});
    }
    for (auto [name, pr] : {std::pair<const char*, det::ModeProfile*>{"profile", &profile},
                            {"displace_profile", &displace_profile}}) {
      const std::string p = name;
      s.push_back({p + ".k0", &pr->k0});
      s.push_back({p + ".radial_half_width", &pr->radial_half_width});
      s.push_back({p + ".alpha_max", &pr->alpha_max});
      s.push_back({p + ".sigma_k", &pr->sigma_k});
      s.push_back({p + ".sigma_alpha", &pr->sigma_alpha});
      s.push_back({p + ".focus_t", &pr->focus_t});
      s.push_back({p + ".focus_x", &pr->focus_x});
    }
    return s;
  }

  void set(const std::string& key, const std::string& value) {
    for (auto& [name, slot] : slots()) {
      if (name != key) continue;
      std::visit(
          [&](auto* p) {
            using T = std::remove_pointer_t<decltype(p)>;
            if constexpr (std::is_same_v<T, double>) {
              *p = detail::parse_double(key, value);
            } else if constexpr (std::is_same_v<T, int>) {
              const long long v = detail::parse_integer(key, value);
              if (v < INT32_MIN || v > INT32_MAX) throw ConfigError(key + ": out of range");
              *p = static_cast<int>(v);
            } else if constexpr (std::is_same_v<T, std::uint64_t>) {
              const long long v = detail::parse_integer(key, value);
              if (v < 0) throw ConfigError(key + ": must be >= 0");
              *p = static_cast<T>(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
              *p = detail::trim(value);
            } else if constexpr (std::is_same_v<T, bool>) {
              *p = detail::parse_bool(key, value);
            } else if constexpr (std::is_same_v<T, std::array<int, 3>>) {
              const auto v = detail::parse_vector<3>(key, value);
              for (int i = 0; i < 3; ++i) {
                if (v[i] != std::floor(v[i])) throw ConfigError(key + ": expected integers");
                (*p)[i] = static_cast<int>(v[i]);
              }
            } else {
              *p = detail::parse_vector<std::tuple_size_v<T>>(key, value);
            }
          },
          slot);
      return;
    }
    throw ConfigError("unknown configuration key '" + key + "'");
  }

  // Resolved configuration, nested by section. The output directory is omitted so that
  // identical runs written to different places stay byte-identical.
  nlohmann::json to_json() const {
    RunConfig c = *this;
    nlohmann::json j = nlohmann::json::object();
    for (auto& [name, slot] : c.slots()) {
      if (name == "run.out") continue;
      const auto dot = name.find('.');
      std::visit([&](auto* p) { j[name.substr(0, dot)][name.substr(dot + 1)] = *p; }, slot);
    }
    return j;
  }

  // Profiles take their mass from physics.m.
  det::ModeProfile malus_profile() const {
    det::ModeProfile p = profile;
    p.mass = mass;
    return p;
  }
  det::ModeProfile displacement_profile() const {
    det::ModeProfile p = displace_profile;
    p.mass = mass;
    return p;
  }

  det::DetectorConfig detector() const {
    det::DetectorConfig d;
    d.grid = grid;
    d.mass = mass;
    d.scalar_mass = scalar_mass;
    d.lambda = lambda;
    d.theta = theta;
    d.n = n;
    d.born_order = born_order;
    d.rho = rho;
    d.f = f;
    return d;
  }
};

// Flat key-value text: "[section]" headers, "key = value" lines, '#' or ';' comments.
// Keys before the first header belong to [run].
inline void apply_ini(RunConfig& cfg, const std::string& text, const std::string& origin) {
  std::istringstream is(text);
  std::string line, section = "run";
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "unterminated section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    try {
      cfg.set(section + "." + detail::trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
}

// JSON alternative: {"section": {"key": value}}; arrays become comma lists, top-level scalars go to [run].
inline void apply_json(RunConfig& cfg, const std::string& text, const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(origin + ": top level must be an object");
  auto scalar = [&](const std::string& key, const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number() || v.is_boolean()) return v.dump();
    if (v.is_array()) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) throw ConfigError(origin + ": " + key + ": arrays must hold numbers");
        s += (i ? "," : "") + v[i].dump();
      }
      return s;
    }
    throw ConfigError(origin + ": " + key + ": unsupported value");
  };
  for (const auto& [sec, body] : j.items()) {
    if (body.is_object()) {
      for (const auto& [key, v] : body.items()) cfg.set(sec + "." + key, scalar(sec + "." + key, v));
    } else {
      cfg.set("run." + sec, scalar(sec, body));
    }
  }
}

inline void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool json = (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) ||
                    (first != std::string::npos && text[first] == '{');
  if (json) {
    apply_json(cfg, text, path);
  } else {
    apply_ini(cfg, text, path);
  }
}

// "linear:<eta>", "circular:+1" / "circular:-1", or "components:<re_x>,<im_x>,<re_y>,<im_y>".
inline det::PolarizationQubit parse_sigma(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("malus.sigma: expected kind:value, got '" + spec + "'");
  const std::string kind = detail::trim(spec.substr(0, colon)), arg = spec.substr(colon + 1);
  try {
    if (kind == "linear") return det::PolarizationQubit::linear(detail::parse_double("malus.sigma", arg));
    if (kind == "circular") {
      return det::PolarizationQubit::circular(static_cast<int>(detail::parse_integer("malus.sigma", arg)));
    }
    if (kind == "components") {
      const auto v = detail::parse_vector<4>("malus.sigma", arg);
      return det::PolarizationQubit({v[0], v[1]}, {v[2], v[3]}, 1e-9);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("malus.sigma: ") + e.what());
  }
  throw ConfigError("malus.sigma: unknown kind '" + kind + "'");
}

}  // namespace proca::cli

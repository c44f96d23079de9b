#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "proca/cli/commands.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> workers;
  std::optional<double> tolerance;
  std::optional<std::string> mutate;
  std::vector<std::string> overrides;
};

using Command = proca::cli::Outcome (*)(const proca::cli::RunConfig&);

// The key --tolerance overrides for each command; identities are exact and take none.
const char* tolerance_key(const std::string& name) {
  if (name == "green") return "green.tolerance";
  if (name == "malus") return "malus.tolerance";
  if (name == "displace") return "displace.tolerance";
  if (name == "oracle") return "oracle.tolerance";
  return nullptr;
}

// File values, then PROCA_WORKBENCH_OUT, then flags.
proca::cli::RunConfig resolve(const std::string& name, const Flags& f) {
  proca::cli::RunConfig cfg;
  if (!f.config.empty()) proca::cli::load_config_file(cfg, f.config);
  for (const auto& kv : f.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw proca::cli::ConfigError("--set expects section.key=value, got '" + kv + "'");
    cfg.set(proca::cli::detail::trim(kv.substr(0, eq)), kv.substr(eq + 1));
  }
  if (const char* env = std::getenv("PROCA_WORKBENCH_OUT"); env && *env && !f.out) cfg.out = env;
  if (f.out) cfg.out = *f.out;
  if (f.seed) cfg.seed = *f.seed;
  if (f.workers) cfg.workers = *f.workers;
  if (f.mutate) cfg.mutate = *f.mutate;
  if (f.tolerance) {
    const char* key = tolerance_key(name);
    if (!key) throw proca::cli::ConfigError("--tolerance does not apply to " + name);
    if (!(*f.tolerance > 0)) throw proca::cli::ConfigError("--tolerance must be positive");
    std::ostringstream v;
    v << std::setprecision(17) << *f.tolerance;
    cfg.set(key, v.str());
  }
  if (cfg.workers < 1) throw proca::cli::ConfigError("run.workers must be >= 1");
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace proca::cli;
  CLI::App app{"Verification suites and detector experiments for coupled Proca fields"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::tuple<std::string, std::string, Command>> commands{
      {"identities", "symbolic identity and structure suites", cmd_identities},
      {"green", "lattice Green operator residuals", cmd_green},
      {"malus", "polarization sweep and Malus fit", cmd_malus},
      {"displace", "displaced form factor decay table", cmd_displace},
      {"oracle", "closed-form expectation against the truncated Fock space", cmd_oracle}};
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "key-value or JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", flags.seed, "random seed");
    sub->add_option("--out", flags.out, "output directory (default: $PROCA_WORKBENCH_OUT, then run.out)");
    sub->add_option("--workers", flags.workers, "worker threads for the lattice and mode sums");
    sub->add_option("--set", flags.overrides, "override one key, section.key=value")->take_all();
    if (name == "identities") {
      sub->add_option("--mutate", flags.mutate, "inject a defect to exercise the harness")->check(CLI::IsMember({"none", "sign-flip"}));
    } else {
      sub->add_option("--tolerance", flags.tolerance, "pass threshold of the main check");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_pass : exit_config;
  }

  for (const auto& [name, help, fn] : commands) {
    if (!app.got_subcommand(name)) continue;
    try {
      const RunConfig cfg = resolve(name, flags);
      const Outcome o = fn(cfg);
      (o.code == exit_pass ? std::cout : std::cerr) << (o.code == exit_pass ? "PASS " : "FAIL ") << name << ": " << o.summary
                                                   << '\n';
      return o.code;
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return exit_config;
    } catch (const std::exception& e) {
      std::cerr << "internal error: " << e.what() << '\n';
      return exit_internal;
    }
  }
  return exit_internal;
}

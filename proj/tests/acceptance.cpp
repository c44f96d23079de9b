// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "proca/cli/commands.hpp"

namespace {

using namespace proca;
using cli::detail::sci;
using lat::pi;

struct Verdict {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string secs(double s) {
  char b[32];
  std::snprintf(b, sizeof b, "%.1fs", s);
  return b;
}

double slope(double big, double small, double ratio) { return std::log(big / small) / std::log(ratio); }

// 1. Every symbolic identity and structure identity, 50 seeds each, exact zero, under 2 minutes.
Verdict identities() {
  Stopwatch sw;
  const int trials = 50;
  std::vector<sym::IdentityReport> all = sym::check_identity_suite(1, trials);
  for (auto tag : sym::all_systems()) {
    auto r = sym::check_structure_suite(tag, 1, trials);
    all.insert(all.end(), r.begin(), r.end());
  }
  const double t = sw.seconds();
  std::string failed;
  for (const auto& r : all) {
    if (!r.ok()) failed += " " + r.identity_name;
  }
  return {failed.empty() && t < 120, std::to_string(all.size()) + " identities x " + std::to_string(trials) +
                                         " trials, " + (failed.empty() ? "no violations" : "violated:" + failed) + ", " +
                                         secs(t)};
}

// 2. Neutral Proca Green operators on N = 16, Nt = 400.
Verdict neutral_green() {
  Stopwatch sw;
  cli::RunConfig cfg;
  cfg.grid.N = 16;
  cfg.grid.Nt = 400;
  cfg.system = "neutral";
  cfg.sources = "mixed";
  const cli::GreenRun run = cli::run_green(cfg);
  double g12 = 0, g3 = 0, con = 0, refine = INFINITY;
  for (const auto& rep : run.reports) {
    for (const auto& e : rep.entries) {
      if (e.check == "G3") {
        g3 = std::max(g3, e.relative);
      } else if (rep.name == "proca-constraint") {
        con = std::max(con, e.relative);
      } else {
        g12 = std::max(g12, e.relative);
      }
    }
  }
  for (const auto& r : run.refinement) refine = std::min(refine, r.slope);
  const double t = sw.seconds();
  return {g12 < 1e-6 && con < 1e-6 && g3 < 1e-10 && refine >= 3.5 && t < 300,
          "G1/G2 " + sci(g12) + ", constraint " + sci(con) + ", G3 " + sci(g3) + ", dt-halving slope " + sci(refine) +
              ", " + secs(t)};
}

// 3. Born-series truncation: residual slope order + 1 in the coupling.
Verdict born_orders() {
  lat::Grid g;
  g.N = 12;
  g.Nt = 300;
  const lat::AnalyticField J = cli::detail::green_source("mixed", g);
  const lat::AnalyticField A = cli::detail::background_potential(g);
  const lat::Fields f{J.sample(g), cli::detail::scalar_source(g).sample(g)};
  bool ok = true;
  std::string d;
  for (int order : {1, 2}) {
    std::vector<double> res;
    for (double lambda : {0.2, 0.1}) {
      lat::ProcaScalar sys({1.0, 0.8, lambda, A}, g);
      const lat::Fields u = sys.E_P(order).retarded(f);
      res.push_back(blk::tuple::norm(blk::tuple::add(sys.P(u), f, -1.0)) / blk::tuple::norm(f));
    }
    const double s = slope(res[0], res[1], 2);
    ok = ok && std::abs(s - (order + 1)) <= 0.2;
    d += "proca-scalar order " + std::to_string(order) + " slope " + sci(s) + "; ";
  }
  const lat::LatticeField Jl = J.sample(g);
  for (double kappa : {0.0, 1.0, 2.22}) {
    for (int order : {1, 2}) {
      std::vector<double> res;
      for (double q : {0.1, 0.05}) {
        lat::ChargedProca sys({q, kappa, 1.0, A}, g);
        res.push_back(lat::relative_residual(sys.PA(sys.E_P(order).retarded({Jl})[0]), Jl));
      }
      const double s = slope(res[0], res[1], 2);
      ok = ok && std::abs(s - (order + 1)) <= 0.2;
      char b[96];
      std::snprintf(b, sizeof b, "charged kappa %.2f order %d slope %.3f; ", kappa, order, s);
      d += b;
    }
  }
  return {ok, d.substr(0, d.size() - 2)};
}

// 4. Closed-form expectation against the truncated Fock space, n <= 3 and up to three modes.
Verdict fock_oracle() {
  double worst = 0;
  int cases = 0;
  for (int modes = 1; modes <= 3; ++modes) {
    for (const auto& r : cli::oracle_table(100 + modes, 3, modes, 10, 1.0)) {
      worst = std::max(worst, r.diff);
      ++cases;
    }
  }
  return {worst < 1e-10, std::to_string(cases) + " instances, max abs diff " + sci(worst)};
}

det::ModeProfile malus_profile(double alpha_max) {
  det::ModeProfile p = cli::RunConfig::default_profile();
  p.alpha_max = alpha_max;
  p.sigma_alpha = alpha_max / 2;
  return p;
}

// 5. Malus law for linear sigma, flat curve for circular sigma, 16-point sweeps under 10 minutes each.
Verdict malus() {
  const det::Detector D(det::DetectorConfig{});
  const det::ModeProfile p = malus_profile(0.1);
  const fock::ModeGrid grid = p.box_grid({16, 16, 24});
  std::vector<double> thetas;
  for (int i = 0; i < 16; ++i) thetas.push_back(pi * i / 16);
  bool ok = true;
  double worst_res = 0, worst_eta = 0, longest = 0;
  for (double eta : {0.0, pi / 6, pi / 3}) {
    Stopwatch sw;
    const det::MalusReport m = D.malus_sweep(det::PolarizationQubit::linear(eta), p, grid, thetas);
    longest = std::max(longest, sw.seconds());
    worst_res = std::max(worst_res, m.fit.relative_residual);
    worst_eta = std::max(worst_eta, cli::detail::angle_distance_mod_pi(m.fit.eta, eta));
  }
  ok = worst_res < 0.01 && worst_eta <= 0.01;
  Stopwatch sw;
  const det::MalusReport c = D.malus_sweep(det::PolarizationQubit::circular(1), p, grid, thetas);
  longest = std::max(longest, sw.seconds());
  ok = ok && c.fit.spread <= std::pow(std::tan(p.alpha_max), 2) && longest < 600;
  return {ok, "linear fit residual " + sci(worst_res) + ", eta error " + sci(worst_eta) + ", circular spread " +
                  sci(c.fit.spread) + " (bound " + sci(std::pow(std::tan(p.alpha_max), 2)) + "), longest sweep " +
                  secs(longest)};
}

// 6. 1 <= ||s eps||^2 <= sec^2(alpha_max) for random sigma.
Verdict collimation() {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> N;
  bool ok = true;
  std::string d;
  for (double am : {0.05, 0.1, 0.3}) {
    det::ModeProfile p = malus_profile(am);
    p.sigma_k = p.sigma_alpha = 0;
    const fock::ModeGrid grid = p.box_grid({16, 16, 24});
    const double upper = 1 / std::pow(std::cos(am), 2);
    double lo = INFINITY, hi = 0;
    for (int i = 0; i < 20; ++i) {
      const std::complex<double> x(N(rng), N(rng)), y(N(rng), N(rng));
      const double n = std::sqrt(std::norm(x) + std::norm(y));
      const double c = det::build_state(p, det::PolarizationQubit(x / n, y / n), grid).collimation_norm2;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    ok = ok && lo >= 1 - 1e-10 && hi <= upper + 1e-10;
    char b[128];
    std::snprintf(b, sizeof b, "alpha %.2f: [%.12f, %.12f] in [1, %.12f]; ", am, lo, hi, upper);
    d += b;
  }
  return {ok, d.substr(0, d.size() - 2)};
}

// 7. |R_exact - R_leading| ~ lambda^4 at Born order 2.
Verdict lambda_order() {
  const det::ModeProfile p = malus_profile(0.1);
  const fock::ModeGrid grid = p.box_grid({16, 16, 24});
  std::vector<double> lambdas{1e-3, std::pow(10.0, -2.5), 1e-2}, diffs;
  for (double l : lambdas) {
    det::DetectorConfig c;
    c.lambda = l;
    const det::ResponseReport r = det::Detector(c).induced_response(det::PolarizationQubit::linear(0.5), p, grid);
    diffs.push_back(std::abs(r.R_exact - r.R_leading));
  }
  const double s = det::log_slope(lambdas, diffs);
  return {std::abs(s - 4) <= 0.2, "log-log slope " + sci(s) + " over lambda in [1e-3, 1e-2]"};
}

// 8. Along-beam |A_delta| ~ delta^-3/2, transverse delta^4 |A_delta| decreasing, delta in [30, 300].
Verdict displacement() {
  const det::Detector D(det::DetectorConfig{});
  const det::ModeProfile p = cli::RunConfig::default_displace_profile();
  std::vector<double> ds;
  for (int i = 0; i < 6; ++i) ds.push_back(30 * std::pow(10.0, i / 5.0));
  const det::DisplacementReport beam = D.displaced_form_factor(p, {std::sqrt(2.0), 0, 0, -1}, ds);
  const det::DisplacementReport side = D.displaced_form_factor(p, {0, 1, 0, 0}, ds);
  std::string d = "along-beam slope " + sci(beam.slope);
  if (beam.stationary_phase) d += " (stationary phase at delta 300: " + sci(*beam.stationary_phase) + " vs " + sci(beam.abs_A.back()) + ")";
  d += ", transverse delta^4 |A| decreasing " + std::string(side.delta4_decreasing ? "yes" : "no");
  return {std::abs(beam.slope + 1.5) <= 0.15 && side.delta4_decreasing, d};
}

// 9. Proca leading response over its polarization factors equals the two-scalar response.
Verdict scalar_comparison() {
  const det::ModeProfile p = malus_profile(0.1);
  const fock::ModeGrid grid = p.box_grid({16, 16, 24});
  double worst = 0;
  int cases = 0;
  for (double theta : {0.0, 0.7}) {
    det::DetectorConfig c;
    c.theta = theta;
    const det::Detector D(c);
    for (const auto& sigma : {det::PolarizationQubit::linear(0.2), det::PolarizationQubit::circular(-1)}) {
      worst = std::max(worst, D.scalar_comparison(sigma, p, grid).rel_diff);
      ++cases;
    }
  }
  return {worst < 1e-4, std::to_string(cases) + " (theta, sigma) pairs, max relative difference " + sci(worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"symbolic identity suite", identities},
      {"neutral Proca lattice Green operators", neutral_green},
      {"Born-series orders", born_orders},
      {"Fock oracle equivalence", fock_oracle},
      {"Malus law", malus},
      {"collimation bound", collimation},
      {"lambda-order of the response", lambda_order},
      {"displacement asymptotics", displacement},
      {"scalar comparison", scalar_comparison}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s %zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <vector>

#include "proca/detector/profile.hpp"
#include "proca/fock/fock.hpp"
#include "proca/lattice/systems.hpp"

namespace proca::det {

using lat::AnalyticField;
using lat::Fields;
using lat::LatticeField;

// Separable window b(t) * prod_j ((1 + cos(2 pi (x_j - c_j) / L)) / 2)^power, peak value 1.
struct SpaceTimeWindow {
  lat::TimeBump time;
  std::array<double, 3> centre{0, 0, 0};
  int power = 4;

  AnalyticField field(double L) const {
    return lat::bump_form(0, L, 0, time, lat::spatial_bump(centre, power, L));
  }
  nlohmann::json to_json() const {
    return {{"t_center", time.center}, {"t_half_width", time.half_width}, {"t_power", time.power},
            {"x_center", centre},      {"x_power", power}};
  }
};

struct DetectorConfig {
  lat::Grid grid{4 * pi, 16, 12, 240};
  double mass = 1;          // Proca field
  double scalar_mass = 0.8; // probe field
  double lambda = 0.01;
  double theta = 0;
  int n = 1;
  int born_order = 2;
  SpaceTimeWindow rho{lat::TimeBump{5, 2.5, 4}, {0, 0, 0}, 4};
  SpaceTimeWindow f{lat::TimeBump{10, 1.5, 4}, {0, 0, 0}, 2};

  void validate() const {
    grid.validate();
    if (!(mass > 0) || !(scalar_mass > 0)) throw std::invalid_argument("DetectorConfig: masses must be positive");
    if (n < 0) throw std::invalid_argument("DetectorConfig: n must be >= 0");
    if (born_order < 0) throw std::invalid_argument("DetectorConfig: born_order must be >= 0");
    for (const auto* w : {&rho, &f}) {
      if (w->power < 1 || w->time.power < 1 || !(w->time.half_width > 0)) {
        throw std::invalid_argument("DetectorConfig: window powers must be >= 1 and widths positive");
      }
      if (w->time.lo() < grid.t_pad || w->time.hi() > grid.T - grid.t_pad) {
        throw std::invalid_argument("DetectorConfig: window leaves the interior time range");
      }
    }
    if (!(f.time.lo() > rho.time.hi())) throw std::invalid_argument("DetectorConfig: f must start after rho ends");
    // rho E f carries spatial modes up to rho.power + f.power; keep them below Nyquist.
    if (rho.power + f.power >= grid.N / 2) throw std::invalid_argument("DetectorConfig: rho f bandwidth exceeds the lattice");
  }

  nlohmann::json to_json() const {
    return {{"grid", {{"L", grid.L}, {"N", grid.N}, {"T", grid.T}, {"Nt", grid.Nt}, {"t_pad", grid.t_pad}}},
            {"mass", mass},
            {"scalar_mass", scalar_mass},
            {"lambda", lambda},
            {"theta", theta},
            {"n", n},
            {"born_order", born_order},
            {"rho", rho.to_json()},
            {"f", f.to_json()}};
  }
};

struct ResponseReport {
  double theta = 0;
  double R_exact = 0;    // n |<K conj h^-, S>|^2 with h^- from the Born-truncated coupled Green operator
  double R_leading = 0;  // n lambda^2 |<K conj(rho u E f), S>|^2
  double R_factorized = 0;  // n lambda^2 |sigma.u|^2 ||s eps||^-2 |A|^2
  double b_f = 0;
  cplx A = 0;
  double collimation_norm2 = 0;
  double malus_factor = 0;  // |sigma_x cos theta + sigma_y sin theta|^2

  nlohmann::json to_json() const {
    return {{"theta", theta},         {"R_exact", R_exact}, {"R_leading", R_leading},
            {"R_factorized", R_factorized}, {"b_f", b_f}, {"A", {A.real(), A.imag()}},
            {"collimation_norm2", collimation_norm2}, {"malus_factor", malus_factor}};
  }
};

// Least-squares fit R(theta) = floor + amplitude cos^2(theta - eta).
struct MalusFit {
  double amplitude = 0, eta = 0, floor = 0;
  double relative_residual = 0;  // ||R - fit|| / ||R||
  double spread = 0;             // (max - min) / max
  bool flat = false;             // spread <= tan^2 alpha_max
};

struct MalusReport {
  std::vector<double> theta, R, fit_residual;
  double b_f = 0;
  cplx A = 0;
  double collimation_norm2 = 0;
  double factorization_defect = 0;  // max_theta |R / (n lambda^2 ||s eps||^-2 |A|^2) - |sigma.u|^2|
  MalusFit fit;

  nlohmann::json to_json() const {
    return {{"theta", theta},
            {"R", R},
            {"fit_residual", fit_residual},
            {"b_f", b_f},
            {"A", {A.real(), A.imag()}},
            {"collimation_norm2", collimation_norm2},
            {"factorization_defect", factorization_defect},
            {"fit",
             {{"amplitude", fit.amplitude},
              {"eta", fit.eta},
              {"floor", fit.floor},
              {"relative_residual", fit.relative_residual},
              {"spread", fit.spread},
              {"flat", fit.flat}}}};
  }

  void write_csv(std::ostream& os) const {
    os << "theta,R,fit_residual\n" << std::setprecision(17);
    for (std::size_t i = 0; i < theta.size(); ++i) os << theta[i] << ',' << R[i] << ',' << fit_residual[i] << '\n';
  }
};

inline MalusFit fit_malus(const std::vector<double>& theta, const std::vector<double>& R, double alpha_max) {
  const Eigen::Index n = static_cast<Eigen::Index>(theta.size());
  if (n < 3) throw std::invalid_argument("fit_malus: need at least 3 samples");
  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = theta[static_cast<std::size_t>(i)];
    X(i, 0) = 1;
    X(i, 1) = std::cos(2 * t);
    X(i, 2) = std::sin(2 * t);
    y(i) = R[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector3d c = X.colPivHouseholderQr().solve(y);
  MalusFit f;
  const double half = std::hypot(c(1), c(2));
  f.amplitude = 2 * half;
  f.eta = 0.5 * std::atan2(c(2), c(1));
  if (f.eta < 0) f.eta += pi;
  f.floor = c(0) - half;
  f.relative_residual = y.norm() > 0 ? (X * c - y).norm() / y.norm() : 0;
  const double mx = y.maxCoeff(), mn = y.minCoeff();
  f.spread = mx > 0 ? (mx - mn) / mx : 0;
  f.flat = f.spread <= std::pow(std::tan(alpha_max), 2);
  return f;
}

struct DisplacementReport {
  std::array<double, 4> e{};
  std::size_t nodes = 0;
  cplx A0 = 0;
  std::vector<double> delta, abs_A;
  double slope = 0;              // least-squares slope of log|A_delta| against log delta
  bool delta4_decreasing = false;  // delta^4 |A_delta| strictly decreasing over the samples
  std::optional<double> stationary_phase;  // predicted |A| at the largest delta, timelike e only

  nlohmann::json to_json() const {
    nlohmann::json j{{"e", e},         {"nodes", nodes},   {"A0", {A0.real(), A0.imag()}},
                     {"delta", delta}, {"abs_A", abs_A},   {"slope", slope},
                     {"delta4_decreasing", delta4_decreasing}};
    if (stationary_phase) j["stationary_phase_abs_A_at_max_delta"] = *stationary_phase;
    return j;
  }
  void write_csv(std::ostream& os) const {
    os << "delta,abs_A\n" << std::setprecision(17);
    for (std::size_t i = 0; i < delta.size(); ++i) os << delta[i] << ',' << abs_A[i] << '\n';
  }
};

struct ComparisonReport {
  double proca_value = 0;   // R_leading ||s eps||^2 / |sigma.u|^2 = n lambda^2 |A|^2 via the Proca route
  double scalar_value = 0;  // n |<K_Psi conj h^-, s>|^2 via the two-scalar system
  double rel_diff = 0;
  double c_f = 0;           // calibration of the scalar probe

  nlohmann::json to_json() const {
    return {{"proca_value", proca_value}, {"scalar_value", scalar_value}, {"rel_diff", rel_diff}, {"c_f", c_f}};
  }
  void write_csv(std::ostream& os) const {
    os << "proca_value,scalar_value,rel_diff\n"
       << std::setprecision(17) << proca_value << ',' << scalar_value << ',' << rel_diff << '\n';
  }
};

inline double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("log_slope: need >= 2 matching samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::log(x[i]), b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// The probe pipeline for one detector setup. E^-_{K_mm} f and g = rho E^- f are computed once;
// everything depending on theta, lambda, sigma or the mode profile is recomputed per call.
class Detector {
 public:
  explicit Detector(DetectorConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    const auto& G = cfg_.grid;
    f_ = cfg_.f.field(G.L).sample(G);
    rho_ = cfg_.rho.field(G.L).sample(G);
    Ef_ = lat::kg_green(f_, cfg_.scalar_mass, lat::Orientation::advanced);
    g_ = lat::multiply(rho_, Ef_);
    conj_g_ = lat::conj(g_);
  }

  const DetectorConfig& config() const { return cfg_; }
  const LatticeField& g() const { return g_; }

  // v0 = rho u_theta as an analytic 1-form.
  AnalyticField coupling_form(double theta) const {
    const double L = cfg_.grid.L;
    const auto s = lat::spatial_bump(cfg_.rho.centre, cfg_.rho.power, L);
    return lat::bump_form(1, L, 0b0010, cfg_.rho.time, s, std::cos(theta)) +
           lat::bump_form(1, L, 0b0100, cfg_.rho.time, s, std::sin(theta));
  }

  // -lambda rho u_theta E^- f, the order-lambda part of h^-.
  LatticeField h_leading(double theta, double lambda) const {
    LatticeField h(cfg_.grid, 1);
    const std::size_t n = cfg_.grid.points();
    const auto put = [&](sym::IndexMask m, double c) {
      cplx* dst = h.component(sym::basis_index(m));
      for (std::size_t q = 0; q < n; ++q) dst[q] = -lambda * c * g_.data()[q];
    };
    put(0b0010, std::cos(theta));
    put(0b0100, std::sin(theta));
    return h;
  }

  // (h^-, f^-) = (0, f) - V E^-_P (0, f) with E_P Born-truncated at cfg.born_order.
  std::pair<LatticeField, LatticeField> scattered(double theta, double lambda) const {
    lat::ProcaScalar sys({cfg_.mass, cfg_.scalar_mass, lambda, coupling_form(theta)}, cfg_.grid);
    Fields u = sys.E_P(cfg_.born_order).advanced({LatticeField(cfg_.grid, 1), f_});
    LatticeField h = sys.vtimes(u[1]);
    h *= -1.0;
    LatticeField fm = f_;
    fm += sys.vdot(u[0]);
    return {h, fm};
  }

  // A(s, rho, f) = <K_Psi conj g, s> on the grid of s.
  cplx form_factor(const ScalarModeState& s) const {
    return fock::inner(fock::kmap_scalar(conj_g_, cfg_.mass, s.grid), s);
  }
  cplx form_factor(const ModeProfile& p, const ModeGrid& grid) const { return form_factor(p.sample(grid)); }

  // R_leading at one coupling angle for a prepared state.
  double leading_response(const ModeState& S, double theta) const {
    const ModeState K = fock::kmap(lat::conj(h_leading(theta, cfg_.lambda)), cfg_.mass, S.grid);
    return cfg_.n * std::norm(fock::inner(K, S));
  }

  double calibration(const LatticeField& h, const LatticeField& fm) const {
    const ModeGrid lattice = ModeGrid::lattice(cfg_.grid);
    return fock::norm2(fock::kmap(h, cfg_.mass, lattice)) + fock::norm2(fock::kmap_scalar(fm, cfg_.scalar_mass, lattice));
  }

  ResponseReport induced_response(const PolarizationQubit& sigma, const ModeProfile& profile, const ModeGrid& grid) const {
    require_profile(profile);
    const StateBuild b = build_state(profile, sigma, grid);
    ResponseReport r;
    r.theta = cfg_.theta;
    r.collimation_norm2 = b.collimation_norm2;
    r.malus_factor = std::norm(sigma.along(cfg_.theta));
    r.A = form_factor(b.s);
    r.R_leading = leading_response(b.S, cfg_.theta);
    r.R_factorized = cfg_.n * cfg_.lambda * cfg_.lambda * r.malus_factor * std::norm(r.A) / b.collimation_norm2;
    const auto [h, fm] = scattered(cfg_.theta, cfg_.lambda);
    r.R_exact = cfg_.n * std::norm(fock::inner(fock::kmap(lat::conj(h), cfg_.mass, grid), b.S));
    r.b_f = calibration(h, fm);
    return r;
  }

  MalusReport malus_sweep(const PolarizationQubit& sigma, const ModeProfile& profile, const ModeGrid& grid,
                          const std::vector<double>& thetas) const {
    require_profile(profile);
    if (thetas.size() < 8) throw std::invalid_argument("malus_sweep: need at least 8 theta samples");
    for (double t : thetas) {
      if (!(t >= 0 && t < pi)) throw std::invalid_argument("malus_sweep: theta samples must lie in [0, pi)");
    }
    const StateBuild b = build_state(profile, sigma, grid);
    MalusReport m;
    m.collimation_norm2 = b.collimation_norm2;
    m.A = form_factor(b.s);
    m.theta = thetas;
    for (double t : thetas) m.R.push_back(leading_response(b.S, t));
    m.fit = fit_malus(m.theta, m.R, profile.alpha_max);
    const double scale = cfg_.n * cfg_.lambda * cfg_.lambda * std::norm(m.A) / b.collimation_norm2;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      const double t = thetas[i];
      m.fit_residual.push_back(m.R[i] - (m.fit.floor + m.fit.amplitude * std::pow(std::cos(t - m.fit.eta), 2)));
      if (scale > 0) {
        m.factorization_defect =
            std::max(m.factorization_defect, std::abs(m.R[i] / scale - std::norm(sigma.along(t))));
      }
    }
    const auto [h, fm] = scattered(cfg_.theta, cfg_.lambda);
    m.b_f = calibration(h, fm);
    return m;
  }

  // A_delta with phase exp(-i delta (omega e^0 + k.e_vec)) on a grid resolving delta_max.
  DisplacementReport displaced_form_factor(const ModeProfile& profile, const std::array<double, 4>& e,
                                           const std::vector<double>& deltas, const GridBudget& budget = {}) const {
    require_profile(profile);
    const double ee = e[0] * e[0] - e[1] * e[1] - e[2] * e[2] - e[3] * e[3];
    if (std::abs(ee - 1) > 1e-9 && std::abs(ee + 1) > 1e-9 && std::abs(ee) > 1e-9) {
      throw std::invalid_argument("displaced_form_factor: eta(e, e) must be +1, -1 or 0");
    }
    if (deltas.empty()) throw std::invalid_argument("displaced_form_factor: no delta samples");
    double dmax = 0;
    for (double d : deltas) {
      if (!(d >= 0)) throw std::invalid_argument("displaced_form_factor: delta must be >= 0");
      dmax = std::max(dmax, d);
    }
    // Phase of the undisplaced integrand: the cell spans |x_j| <= L/2 and g lives in rho's time window.
    const double toff = std::max(std::abs(cfg_.rho.time.lo() - profile.focus_t), std::abs(cfg_.rho.time.hi() - profile.focus_t));
    std::array<double, 3> intrinsic{};
    for (int d = 0; d < 3; ++d) intrinsic[d] = cfg_.grid.L / 2 + std::abs(profile.focus_x[d]) + toff;
    const ModeGrid grid = displacement_grid(profile, e, dmax, intrinsic, budget);

    const ScalarModeState s = profile.sample(grid);
    const ScalarModeState Kg = fock::kmap_scalar(conj_g_, cfg_.mass, grid);
    std::vector<cplx> F(grid.size());
    std::vector<double> phase(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto k = grid.k(i);
      F[i] = grid.weight * std::conj(Kg.values[i]) * s.values[i];
      phase[i] = fock::omega(cfg_.mass, k) * e[0] + k[0] * e[1] + k[1] * e[2] + k[2] * e[3];
    }
    DisplacementReport r;
    r.e = e;
    r.nodes = grid.size();
    r.delta = deltas;
    for (const cplx& v : F) r.A0 += v;
    for (double d : deltas) {
      cplx a = 0;
      for (std::size_t i = 0; i < F.size(); ++i) a += F[i] * std::polar(1.0, -d * phase[i]);
      r.abs_A.push_back(std::abs(a));
    }
    bool positive = true;
    for (std::size_t i = 0; i < deltas.size(); ++i) positive = positive && deltas[i] > 0 && r.abs_A[i] > 0;
    if (positive && deltas.size() >= 2) r.slope = log_slope(r.delta, r.abs_A);
    r.delta4_decreasing = deltas.size() >= 2;
    for (std::size_t i = 1; i < deltas.size(); ++i) {
      r.delta4_decreasing = r.delta4_decreasing &&
                            std::pow(deltas[i], 4) * r.abs_A[i] < std::pow(deltas[i - 1], 4) * r.abs_A[i - 1];
    }
    // Stationary point k/omega = -e_vec/e^0 for timelike e with e^0 > 0.
    if (ee > 0 && e[0] > 0 && dmax > 0) {
      std::array<double, 3> v{-e[1] / e[0], -e[2] / e[0], -e[3] / e[0]};
      const double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
      const double m = cfg_.mass;
      const std::array<double, 3> ks{m * v[0] / std::sqrt(1 - v2), m * v[1] / std::sqrt(1 - v2),
                                     m * v[2] / std::sqrt(1 - v2)};
      if (profile.envelope(ks) > 0) {
        ModeGrid one;
        one.axes = {std::vector<double>{ks[0]}, std::vector<double>{ks[1]}, std::vector<double>{ks[2]}};
        one.weight = 1;
        const double w = fock::omega(m, ks);
        const double ghat = std::abs(fock::kmap_scalar(conj_g_, m, one).values[0]) * std::sqrt(2 * w);
        double n2 = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) n2 += std::norm(profile.amplitude(grid.k(i)));
        const double s_at = std::abs(profile.amplitude(ks)) / std::sqrt(grid.weight * n2);
        r.stationary_phase = m * m * std::sqrt(w) / (4 * std::pow(pi * dmax * m, 1.5)) * s_at * ghat;
      }
    }
    return r;
  }

  // The Proca route divided by its polarization factors against the two-scalar route.
  ComparisonReport scalar_comparison(const PolarizationQubit& sigma, const ModeProfile& profile, const ModeGrid& grid) const {
    require_profile(profile);
    ComparisonReport c;
    const double factor = std::norm(sigma.along(cfg_.theta));
    if (cfg_.n > 0 && factor < 1e-12) {
      throw std::invalid_argument("scalar_comparison: sigma is orthogonal to u_theta, the Proca route carries no signal");
    }
    const StateBuild b = build_state(profile, sigma, grid);
    if (cfg_.n > 0) c.proca_value = leading_response(b.S, cfg_.theta) * b.collimation_norm2 / factor;

    lat::ScalarPair sys({cfg_.mass, cfg_.scalar_mass, cfg_.lambda, cfg_.rho.field(cfg_.grid.L)}, cfg_.grid);
    const Fields u = sys.E_P(1).advanced({LatticeField(cfg_.grid, 0), f_});
    const Fields vu = sys.V(u);
    LatticeField h = vu[0];
    h *= -1.0;
    LatticeField fm = f_;
    fm -= vu[1];
    c.scalar_value = cfg_.n * std::norm(fock::inner(fock::kmap_scalar(lat::conj(h), cfg_.mass, grid), b.s));
    const ModeGrid lattice = ModeGrid::lattice(cfg_.grid);
    c.c_f = fock::norm2(fock::kmap_scalar(h, cfg_.mass, lattice)) +
            fock::norm2(fock::kmap_scalar(fm, cfg_.scalar_mass, lattice));
    const double scale = std::max(std::abs(c.proca_value), std::abs(c.scalar_value));
    c.rel_diff = scale > 0 ? std::abs(c.proca_value - c.scalar_value) / scale : 0;
    return c;
  }

 private:
  void require_profile(const ModeProfile& p) const {
    p.validate();
    if (p.mass != cfg_.mass) throw std::invalid_argument("Detector: profile mass differs from the Proca mass");
  }

  DetectorConfig cfg_;
  LatticeField f_, rho_, Ef_, g_, conj_g_;
};

}  // namespace proca::det

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "proca/fock/fock.hpp"
#include "proca/lattice/analytic.hpp"
#include "proca/lattice/fft.hpp"

using namespace proca::fock;
namespace lat = proca::lat;

namespace {

lat::Grid small_grid() {
  lat::Grid g;
  g.N = 8;
  g.Nt = 120;
  return g;
}

// Three spatial covectors; the one-particle space over them is 9-dimensional.
ModeGrid three_modes() {
  ModeGrid m;
  m.axes = {std::vector<double>{0.3}, std::vector<double>{-0.2}, std::vector<double>{0.5, 0.9, 1.4}};
  m.weight = 0.7;
  return m;
}

}  // namespace

TEST(ModeGrid, LatticeCellTransformIsTheSpatialFFT) {
  lat::Grid g = small_grid();
  std::mt19937_64 rng(3);
  std::normal_distribution<double> N;
  lat::LatticeField f(g, 0);
  for (std::size_t q = 0; q < g.spatial(); ++q) f.slice(0, 5)[q] = cplx(N(rng), N(rng));
  ModeGrid modes = ModeGrid::lattice(g);
  std::vector<cplx> out;
  CellTransform(g, modes).apply(f.slice(0, 5), out);
  lat::LatticeField ref = f;
  lat::to_modes(ref);
  double err = 0, mode_norm = 0, pos_norm = 0;
  for (std::size_t q = 0; q < g.spatial(); ++q) {
    err = std::max(err, std::abs(out[q] - ref.slice(0, 5)[q]));
    mode_norm += std::norm(out[q]);
    pos_norm += std::norm(f.slice(0, 5)[q]);
  }
  EXPECT_LT(err, 1e-12 * std::sqrt(mode_norm));
  // Parseval: sum_k L^-3 |f~|^2 = dV sum_x |f|^2.
  EXPECT_NEAR(modes.weight * mode_norm / (g.cell_volume() * pos_norm), 1.0, 1e-10);
}

TEST(ModeGrid, BoxWeightsAndValidation) {
  ModeGrid b = ModeGrid::box({-1, -1, 0}, {1, 1, 2}, {5, 5, 9});
  EXPECT_EQ(b.size(), 225u);
  EXPECT_NEAR(b.weight, 0.5 * 0.5 * 0.25 / std::pow(2 * pi, 3), 1e-16);
  EXPECT_THROW(ModeGrid::box({0, 0, 0}, {1, 1, 1}, {1, 4, 4}), std::invalid_argument);
  ModeGrid bad;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Kmap, ProjectorAnnihilatesOnShellCovector) {
  const double m = 1.3;
  for (auto k3 : {0.0, 0.4, 2.5}) {
    std::array<double, 3> k{0.2, -0.7, k3};
    C4 kl{omega(m, k), k[0], k[1], k[2]};
    C4 p = project_transverse(kl, kl, m);
    for (auto c : p) EXPECT_LT(std::abs(c), 1e-14);
  }
}

TEST(Kmap, ZeroSourceGivesZeroState) {
  lat::Grid g = small_grid();
  ModeState u = kmap(lat::LatticeField(g, 1), 1.0, ModeGrid::lattice(g));
  EXPECT_EQ(norm2(u), 0.0);
}

TEST(Kmap, OutputIsTransversal) {
  lat::Grid g = small_grid();
  lat::AnalyticField J(1, g.L);
  for (int mu = 0; mu < 4; ++mu) {
    J += lat::bump_form(1, g.L, static_cast<proca::sym::IndexMask>(1u << mu), lat::TimeBump{6, 3, 6},
                        lat::spatial_bump({1.0 + mu, 2, 3}, 2, g.L), cplx(1 + mu, 0.5 - mu));
  }
  ModeState u = kmap(J.sample(g), 1.1, ModeGrid::lattice(g));
  EXPECT_GT(norm2(u), 0.0);
  EXPECT_LT(transversality_defect(u), 1e-12);
  ModeState v = kmap(J.sample(g), 1.1, ModeGrid::box({-0.4, -0.4, 0.2}, {0.4, 0.4, 1.5}, {5, 5, 7}));
  EXPECT_LT(transversality_defect(v), 1e-12);
}

TEST(Kmap, RejectsSourcesOnThePads) {
  lat::Grid g = small_grid();
  lat::LatticeField f(g, 1);
  f.at(1, 0, 0, 0, 0) = 1;
  EXPECT_THROW(kmap(f, 1.0, ModeGrid::lattice(g)), lat::SupportViolation);
  EXPECT_THROW(kmap(lat::LatticeField(g, 2), 1.0, ModeGrid::lattice(g)), lat::DegreeMismatch);
}

// h = W(t) exp(-i (w_c t + k_c.x)) with a window of >= 20 carrier periods: the mass-shell transform at the
// carrier mode matches an independent fine quadrature, and a 25% detuning of the carrier leaks < 1%.
TEST(Kmap, WindowedPlaneWaveConcentratesOnShell) {
  lat::Grid g;
  g.N = 4;
  g.T = 40;
  g.Nt = 2001;
  const double m = 4.0;
  const std::array<double, 3> kc{0, 2 * pi / g.L, 2 * pi / g.L};
  const double wc = omega(m, kc);
  lat::TimeBump W{20, 19, 8};
  ASSERT_GE(2 * W.half_width * wc / (2 * pi), 20.0);
  auto source = [&](double detune) {
    lat::LatticeField h(g, 0);
    for (int it = 0; it < g.Nt; ++it) {
      const double t = g.t(it);
      for (int ix = 0; ix < g.N; ++ix) {
        for (int iy = 0; iy < g.N; ++iy) {
          for (int iz = 0; iz < g.N; ++iz) {
            const double kx = kc[1] * g.x(iy) + kc[2] * g.x(iz);
            h.at(0, it, ix, iy, iz) = W(t) * std::polar(1.0, -((wc + detune) * t + kx));
          }
        }
      }
    }
    return h;
  };
  ModeGrid modes = ModeGrid::lattice(g);
  ScalarModeState u = kmap_scalar(source(0), m, modes);
  const std::size_t carrier = modes.index(0, 1, 1);
  // Independent oracle: L^3 (2w)^-1/2 int W(t) dt by composite Simpson on 200001 points.
  const int S = 200000;
  double integral = 0;
  for (int j = 0; j <= S; ++j) {
    const double t = W.lo() + (W.hi() - W.lo()) * j / S;
    integral += (j == 0 || j == S ? 1 : (j % 2 ? 4 : 2)) * W(t);
  }
  integral *= (W.hi() - W.lo()) / S / 3;
  const double expect = std::pow(g.L, 3) * integral / std::sqrt(2 * wc);
  EXPECT_NEAR(std::abs(u.values[carrier]) / expect, 1.0, 1e-8);
  double total = 0;
  for (auto v : u.values) total += std::norm(v);
  EXPECT_GT(std::norm(u.values[carrier]) / total, 0.99);
  ScalarModeState d = kmap_scalar(source(0.25 * wc), m, modes);
  EXPECT_LT(std::abs(d.values[carrier]) / std::abs(u.values[carrier]), 0.01);
}

TEST(Inner, PositiveHermitianAndChecked) {
  std::mt19937_64 rng(5);
  ModeGrid grid = three_modes();
  for (int trial = 0; trial < 20; ++trial) {
    ModeState u = random_transversal(grid, 1.2, rng), v = random_transversal(grid, 1.2, rng);
    EXPECT_GT(inner(u, u).real(), 0.0);
    EXPECT_LT(std::abs(inner(u, u).imag()), 1e-14 * inner(u, u).real());
    EXPECT_LT(std::abs(inner(u, v) - std::conj(inner(v, u))), 1e-13);
  }
  ModeState w(grid, 1.3);
  EXPECT_THROW(inner(random_transversal(grid, 1.2, rng), w), GridMismatch);
  ModeState z(ModeGrid::box({0, 0, 0}, {1, 1, 1}, {2, 2, 2}), 1.2);
  EXPECT_THROW(inner(random_transversal(grid, 1.2, rng), z), GridMismatch);
}

TEST(Expectation, VacuumAndEqualTerms) {
  std::mt19937_64 rng(7);
  ModeGrid grid = three_modes();
  ModeState S = random_transversal(grid, 1.0, rng);
  ModeState K = random_transversal(grid, 1.0, rng);
  EXPECT_DOUBLE_EQ(expectation_quadratic(S, 0, {K, S}), norm2(K));
  // Real h: K conj h = K h; choosing it proportional to S makes both terms equal at n = 1.
  ModeState Kh = S;
  Kh *= 0.8 / std::sqrt(norm2(S));
  EXPECT_NEAR(expectation_quadratic(S, 1, {Kh, Kh}), 2 * norm2(Kh), 1e-14);
  EXPECT_THROW(expectation_quadratic(S, -1, {K, K}), std::invalid_argument);
}

TEST(Expectation, NormalisesTheMode) {
  std::mt19937_64 rng(8);
  ModeGrid grid = three_modes();
  ModeState S = random_transversal(grid, 1.0, rng), Kh = random_transversal(grid, 1.0, rng),
            Khb = random_transversal(grid, 1.0, rng);
  ModeState S_big = S;
  S_big *= cplx(3.7, -1.1);
  ModeState S_unit = S;
  S_unit *= 1.0 / std::sqrt(norm2(S));
  for (int n = 0; n <= 3; ++n) {
    EXPECT_NEAR(expectation_quadratic(S_big, n, {Kh, Khb}), expectation_quadratic(S_unit, n, {Kh, Khb}), 1e-12);
  }
}

class OracleCase : public ::testing::TestWithParam<int> {};

TEST_P(OracleCase, ClosedFormMatchesTruncatedFock) {
  const int n = GetParam();
  std::mt19937_64 rng(100 + n);
  ModeGrid grid = three_modes();
  for (int trial = 0; trial < 10; ++trial) {
    ModeState S = random_transversal(grid, 0.9, rng), Kh = random_transversal(grid, 0.9, rng),
              Khb = random_transversal(grid, 0.9, rng);
    const double closed = expectation_quadratic(S, n, {Kh, Khb});
    const double brute = fock_oracle(S, n, {Kh, Khb}, 3, std::max(n, 1));
    EXPECT_NEAR(closed, brute, 1e-10) << "trial " << trial;
    EXPECT_NEAR(fock_oracle(S, n, {Kh, Khb}, 4, 4), brute, 1e-10);
  }
}

INSTANTIATE_TEST_SUITE_P(ParticleNumber, OracleCase, ::testing::Values(0, 1, 2, 3));

TEST(Oracle, SingleModeByHand) {
  ModeGrid grid;
  grid.axes = {std::vector<double>{0.0}, std::vector<double>{0.0}, std::vector<double>{1.0}};
  grid.weight = 1.0;
  ModeState S(grid, 1.0);
  S.values[0] = {0, 1, 0, 0};
  EXPECT_NEAR(fock_oracle(S, 1, {S, S}, 2, 1), 2.0, 1e-14);
  EXPECT_NEAR(fock_oracle(S, 0, {S, S}, 2, 1), 1.0, 1e-14);
  EXPECT_THROW(fock_oracle(S, 2, {S, S}, 2, 1), TruncationOverflow);
  EXPECT_THROW(fock_oracle(S, 1, {S, S}, 5, 1), std::invalid_argument);
}

TEST(Oracle, CommutatorBelowCap) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> N;
  TruncatedFock F(3, 3);
  Eigen::VectorXcd u(3), v(3);
  for (int i = 0; i < 3; ++i) {
    u(i) = cplx(N(rng), N(rng));
    v(i) = cplx(N(rng), N(rng));
  }
  Eigen::MatrixXcd c = F.annihilate(u) * F.create(v) - F.create(v) * F.annihilate(u);
  Eigen::MatrixXcd P = F.below_cap();
  const cplx uv = u.dot(v);  // conjugate-linear in the first argument
  Eigen::MatrixXcd defect = P * (c - uv * Eigen::MatrixXcd::Identity(F.dim(), F.dim())) * P;
  EXPECT_LT(defect.cwiseAbs().maxCoeff(), 1e-12);
  // At the cap the truncation shows up.
  Eigen::MatrixXcd full = c - uv * Eigen::MatrixXcd::Identity(F.dim(), F.dim());
  EXPECT_GT(full.cwiseAbs().maxCoeff(), 0.1);
}

TEST(Export, ModeStateCsv) {
  std::mt19937_64 rng(10);
  ModeState u = random_transversal(three_modes(), 1.0, rng);
  std::ostringstream os;
  write_csv(u, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "k1,k2,k3,re0,im0,re1,im1,re2,im2,re3,im3");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "proca/lattice/green.hpp"
#include "proca/symforms/ops.hpp"

using namespace proca::lat;
namespace sym = proca::sym;

namespace {

Grid default_grid() {
  Grid g;
  g.validate();
  return g;
}

AnalyticField bump_one_form(const Grid& g) {
  AnalyticField J = bump_form(1, g.L, 0b0001, TimeBump{6, 4, 8}, spatial_bump({6, 5, 7}, 2, g.L));
  J += bump_form(1, g.L, 0b0010, TimeBump{5.5, 4, 8}, spatial_bump({4, 6, 6}, 2, g.L), cplx(0.5, 0.2));
  J += bump_form(1, g.L, 0b1000, TimeBump{6.5, 3.5, 8}, spatial_bump({7, 7, 3}, 2, g.L), cplx(-0.3, 0));
  return J;
}

// Classical RK4 on u'' + w^2 u = g(t), u(0) = u'(0) = 0.
std::vector<double> rk4_oscillator(const TimeBump& b, double w, double T, int Nt, int substeps) {
  std::vector<double> out(static_cast<std::size_t>(Nt), 0.0);
  const double H = T / (Nt - 1), h = H / substeps;
  double u = 0, v = 0, t = 0;
  auto acc = [&](double tt, double uu) { return b(tt) - w * w * uu; };
  for (int i = 1; i < Nt; ++i) {
    for (int s = 0; s < substeps; ++s) {
      const double k1u = v, k1v = acc(t, u);
      const double k2u = v + 0.5 * h * k1v, k2v = acc(t + 0.5 * h, u + 0.5 * h * k1u);
      const double k3u = v + 0.5 * h * k2v, k3v = acc(t + 0.5 * h, u + 0.5 * h * k2u);
      const double k4u = v + h * k3v, k4v = acc(t + h, u + h * k3u);
      u += h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
      v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
      t += h;
    }
    out[static_cast<std::size_t>(i)] = u;
  }
  return out;
}

LatticeField reverse_time(const LatticeField& f) {
  LatticeField r(f.grid(), f.degree());
  const Grid& g = f.grid();
  for (int c = 0; c < f.components(); ++c) {
    for (int it = 0; it < g.Nt; ++it) {
      std::copy(f.slice(c, it), f.slice(c, it) + g.spatial(), r.slice(c, g.Nt - 1 - it));
    }
  }
  return r;
}

}  // namespace

TEST(FourierConvention, PlaneWaveRoundTrip) {
  Grid g = default_grid();
  g.Nt = 8;
  g.t_pad = 0;
  AnalyticField w(0, g.L);
  w.add_term({0, TimeBump{3.5, 100, 0}, 0, plane_wave({1, -2, 3}, cplx(0.7, -0.1))});
  LatticeField f = w.sample(g);
  LatticeField m = f;
  to_modes(m);
  // f = a e^{i k.x}  ->  f~(k') = a L^3 at k' = -k in the forward sign convention.
  const std::size_t n = static_cast<std::size_t>(g.N);
  const std::size_t q = ((n - 1) * n + 2) * n + (n - 3);
  EXPECT_NEAR(std::abs(m.slice(0, 2)[q] - cplx(0.7, -0.1) * std::pow(g.L, 3)), 0.0, 1e-12 * std::pow(g.L, 3));
  from_modes(m);
  EXPECT_LT(relative_residual(m, f), 1e-12);
}

TEST(SpectralDerivative, MatchesAnalyticPartial) {
  Grid g = default_grid();
  g.Nt = 40;
  AnalyticField w = bump_form(0, g.L, 0, TimeBump{6, 4, 8}, spatial_bump({1, 2, 3}, 3, g.L));
  LatticeField f = w.sample(g);
  for (int j = 1; j <= 3; ++j) {
    LatticeField num = spatial_derivative(f, j);
    LatticeField ex = w.partial(j).sample(g);
    EXPECT_LT((num - ex).max_abs(), 1e-12 * ex.max_abs()) << "axis " << j;
  }
}

TEST(KgGreen, ZeroSourceGivesZero) {
  Grid g = default_grid();
  g.Nt = 50;
  LatticeField f(g, 1);
  EXPECT_EQ(kg_green(f, 1.0, Orientation::retarded).max_abs(), 0.0);
}

TEST(KgGreen, RejectsSourceInThePad) {
  Grid g = default_grid();
  g.Nt = 50;
  LatticeField f(g, 0);
  f.at(0, 0, 1, 1, 1) = 1.0;
  EXPECT_THROW(kg_green(f, 1.0, Orientation::retarded), SupportViolation);
  LatticeField h(g, 0);
  h.at(0, g.Nt - 1, 1, 1, 1) = 1.0;
  EXPECT_THROW(kg_green(h, 1.0, Orientation::advanced), SupportViolation);
}

TEST(KgGreen, RejectsNonPositiveMass) {
  Grid g = default_grid();
  g.Nt = 20;
  EXPECT_THROW(kg_green(LatticeField(g, 0), 0.0, Orientation::retarded), std::invalid_argument);
}

TEST(KgGreen, SingleModeMatchesRk4Oracle) {
  Grid g = default_grid();
  const TimeBump b{6, 3, 8};
  const ModeIndex n{1, 0, -2};
  AnalyticField src(0, g.L);
  src.add_term({0, b, 0, plane_wave(n)});
  const double mass = 0.8;
  const double w = std::sqrt(mass * mass + std::pow(src.k(1), 2) + std::pow(src.k(-2), 2));
  auto oracle = rk4_oscillator(b, w, g.T, g.Nt, 40);
  LatticeField u = kg_green(src.sample(g), mass, Orientation::retarded);
  double err = 0, ref = 0;
  for (int i = 0; i < g.Nt; ++i) {
    // At the origin e^{i k.x} = 1.
    err = std::max(err, std::abs(u.at(0, i, 0, 0, 0) - oracle[static_cast<std::size_t>(i)]));
    ref = std::max(ref, std::abs(oracle[static_cast<std::size_t>(i)]));
  }
  EXPECT_LT(err / ref, 1e-6);
}

class KgGreenAxioms : public ::testing::TestWithParam<Orientation> {};

TEST_P(KgGreenAxioms, G1G2G3) {
  Grid g = default_grid();
  AnalyticField J = bump_one_form(g);
  LatticeField f = J.sample(g);
  const double m = 1.0;
  LatticeField u = kg_green(f, m, GetParam());
  EXPECT_LT(relative_residual(kg_operator(u, m * m), f), 1e-6);
  EXPECT_LT(relative_residual(kg_green(kg_operator(f, m * m), m, GetParam()), f), 1e-6);
  // G3: the retarded solution vanishes before the source switches on, the advanced one after.
  auto [lo, hi] = f.time_support();
  const double leak = GetParam() == Orientation::retarded ? u.max_abs_range(0, lo - 1) : u.max_abs_range(hi + 1, g.Nt - 1);
  EXPECT_LT(leak, 1e-10 * u.max_abs());
}

INSTANTIATE_TEST_SUITE_P(Orientations, KgGreenAxioms,
                         ::testing::Values(Orientation::retarded, Orientation::advanced),
                         [](const auto& info) { return to_string(info.param); });

TEST(KgGreen, AdvancedIsTimeReflectedRetarded) {
  Grid g = default_grid();
  g.Nt = 120;
  LatticeField f = bump_one_form(g).sample(g);
  LatticeField adv = kg_green(f, 1.3, Orientation::advanced);
  LatticeField refl = reverse_time(kg_green(reverse_time(f), 1.3, Orientation::retarded));
  EXPECT_LT((adv - refl).max_abs(), 1e-13 * adv.max_abs());
}

TEST(KgGreen, RefinementSlopeIsFourthOrder) {
  Grid g = default_grid();
  g.N = 8;
  AnalyticField src = bump_form(0, g.L, 0, TimeBump{6, 3, 8}, spatial_bump({2, 3, 4}, 2, g.L));
  std::vector<double> res;
  for (int Nt : {101, 201, 401}) {
    g.Nt = Nt;
    LatticeField f = src.sample(g);
    res.push_back(relative_residual(kg_operator(kg_green(f, 1.0, Orientation::retarded), 1.0), f));
  }
  for (std::size_t i = 1; i < res.size(); ++i) EXPECT_GE(std::log2(res[i - 1] / res[i]), 3.5) << i;
}

TEST(FormOps, ExteriorDerivativeSquaresToZero) {
  Grid g = default_grid();
  g.Nt = 200;
  for (int p = 0; p <= 2; ++p) {
    AnalyticField w(p, g.L);
    for (auto m : sym::basis(p)) {
      w += bump_form(p, g.L, m, TimeBump{6, 4, 8}, spatial_bump({1.0 + m, 2, 3}, 2, g.L), cplx(1, 0.1 * m));
    }
    LatticeField f = w.sample(g);
    LatticeField dd = d(d(f));
    LatticeField ref = d(f);
    EXPECT_LT(dd.norm_interior(), 1e-8 * ref.norm_interior()) << "degree " << p;
  }
}

TEST(FormOps, LatticeDerivativesMatchAnalytic) {
  Grid g = default_grid();
  g.Nt = 400;
  AnalyticField w = bump_one_form(g);
  LatticeField f = w.sample(g);
  EXPECT_LT(relative_residual(d(f), d(w).sample(g)), 1e-6);
  EXPECT_LT(relative_residual(codiff(f), codiff(w).sample(g)), 1e-6);
}

// Coefficients of delta read off the symbolic coordinate formula: delta(x^b dx^I) is a constant form.
TEST(FormOps, CodifferentialMatchesSymbolicCoordinateFormula) {
  Grid g = default_grid();
  const TimeBump window{6, 4, 8};
  for (int p = 1; p <= 3; ++p) {
    AnalyticField w(p, g.L);
    int seed = 0;
    for (auto m : sym::basis(p)) {
      w += bump_form(p, g.L, m, window, spatial_bump({0.5 * seed, 2, 1}, 2, g.L), cplx(1, -0.2 * seed));
      ++seed;
    }
    // Expected: sum over I, b of c(b, I -> J) d_b w_I, with c from symforms.
    AnalyticField expected(p - 1, g.L);
    for (auto I : sym::basis(p)) {
      for (int b = 0; b < 4; ++b) {
        sym::PolyForm probe = sym::PolyForm::basis_form(I, sym::Poly::coordinate(b));
        sym::PolyForm res = sym::codiff_coord(probe);
        for (int j = 0; j < res.size(); ++j) {
          if (res[j].is_zero()) continue;
          const double c = res[j].terms().begin()->second.re.get_d();
          const AnalyticField wb = w.partial(b);
          for (auto t : wb.terms()) {
            if (t.mask != I) continue;
            t.mask = sym::basis(p - 1)[static_cast<std::size_t>(j)];
            for (auto& [n, v] : t.spatial) v *= c;
            expected.add_term(t);
          }
        }
      }
    }
    EXPECT_LT(relative_residual(codiff(w.sample(g)), expected.sample(g)), 1e-6) << "degree " << p;
  }
}

namespace {

// d_A d_A w - iq F ^ w over the interior window, relative to |iq F ^ w|.
double dA_squared_defect(const Grid& g, const TimeBump& a_time, int p) {
  const double q = 0.7;
  AnalyticField A(1, g.L);
  A += bump_form(1, g.L, 0b0001, a_time, spatial_bump({3, 3, 3}, 1, g.L), 0.4);
  A += bump_form(1, g.L, 0b0100, a_time, spatial_bump({5, 3, 1}, 1, g.L), -0.3);
  LatticeField Al = A.sample(g);
  LatticeField F = d(A).sample(g);
  AnalyticField w(p, g.L);
  for (auto m : sym::basis(p)) w += bump_form(p, g.L, m, TimeBump{5.5, 4, 8}, spatial_bump({1, 1.0 + m, 2}, 2, g.L));
  LatticeField f = w.sample(g);
  LatticeField rhs = wedge(F, f);
  rhs *= cplx(0, q);
  return relative_residual(dA(dA(f, Al, q), Al, q), rhs);
}

}  // namespace

// Static spatial-bump potential: the time stencil commutes with multiplication by A, and the
// spectral derivative obeys Leibniz exactly on band-limited products, so only rounding remains.
TEST(FormOps, ModifiedExteriorDerivativeSquaresToCurvature) {
  Grid g = default_grid();
  g.Nt = 200;
  const TimeBump static_profile{6, 1e6, 0};
  for (int p = 0; p <= 2; ++p) EXPECT_LT(dA_squared_defect(g, static_profile, p), 1e-8) << "degree " << p;
}

// Time-dependent bump potential: the defect is the finite-difference Leibniz error, fourth order in dt.
TEST(FormOps, ModifiedExteriorDerivativeDefectConvergesAtFourthOrder) {
  Grid g = default_grid();
  g.N = 8;
  const TimeBump bump{6, 4, 8};
  g.Nt = 201;
  const double coarse = dA_squared_defect(g, bump, 1);
  g.Nt = 401;
  const double fine = dA_squared_defect(g, bump, 1);
  EXPECT_LT(fine, 1e-6);
  EXPECT_GE(std::log2(coarse / fine), 3.5);
}

TEST(FormOps, DegreeChecks) {
  Grid g = default_grid();
  g.Nt = 10;
  LatticeField a(g, 1), b(g, 2);
  EXPECT_THROW(a += b, DegreeMismatch);
  EXPECT_THROW(interior(b, a), DegreeMismatch);
  EXPECT_THROW(F_dot(a, a), DegreeMismatch);
  EXPECT_THROW(multiply(a, b), DegreeMismatch);
}

TEST(ProcaGreen, DivergenceFreeSourceEqualsKleinGordon) {
  Grid g = default_grid();
  g.Nt = 200;
  AnalyticField H(2, g.L);
  H += bump_form(2, g.L, 0b0011, TimeBump{6, 4, 8}, spatial_bump({2, 2, 2}, 2, g.L));
  H += bump_form(2, g.L, 0b0110, TimeBump{6, 4, 8}, spatial_bump({5, 1, 2}, 2, g.L), cplx(0, 1));
  AnalyticField J = codiff(H);
  LatticeField W = proca_green(J, g, 1.2, Orientation::retarded);
  LatticeField K = kg_green(J.sample(g), 1.2, Orientation::retarded);
  EXPECT_LT((W - K).max_abs(), 1e-12 * K.max_abs());
}

class ProcaGreenAxioms : public ::testing::TestWithParam<Orientation> {};

TEST_P(ProcaGreenAxioms, FieldEquationAndConstraint) {
  Grid g = default_grid();
  const double m = 1.0;
  AnalyticField J = bump_one_form(g);
  LatticeField W = proca_green(J, g, m, GetParam());
  EXPECT_LT(relative_residual(proca_operator(W, m), J.sample(g)), 1e-6);
  LatticeField mdW = codiff(W);
  mdW *= m * m;
  EXPECT_LT(relative_residual(mdW, codiff(J).sample(g)), 1e-6);
}

INSTANTIATE_TEST_SUITE_P(Orientations, ProcaGreenAxioms,
                         ::testing::Values(Orientation::retarded, Orientation::advanced),
                         [](const auto& info) { return to_string(info.param); });

TEST(Export, BinaryHeaderAndSize) {
  Grid g = default_grid();
  g.N = 4;
  g.Nt = 9;
  LatticeField f(g, 1);
  f.at(2, 3, 1, 2, 3) = cplx(1.5, -2);
  const std::string path = ::testing::TempDir() + "/field.bin";
  write_binary(f, path);
  std::ifstream is(path, std::ios::binary);
  std::string header;
  std::getline(is, header);
  EXPECT_NE(header.find("degree=1"), std::string::npos);
  EXPECT_NE(header.find("components=dt,dx,dy,dz"), std::string::npos);
  std::vector<char> payload((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  EXPECT_EQ(payload.size(), f.size() * 8);
  float v[2];
  std::memcpy(v, payload.data() + f.index(2, 3, 1, 2, 3) * 8, 8);
  EXPECT_EQ(v[0], 1.5f);
  EXPECT_EQ(v[1], -2.0f);
}

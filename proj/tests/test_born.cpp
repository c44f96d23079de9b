#include <gtest/gtest.h>

#include <cmath>

#include "proca/lattice/systems.hpp"

using namespace proca::lat;
namespace blk = proca::blk;

namespace {

// Smaller lattice for the Born tests: the series only multiplies by band-limited backgrounds a few times.
Grid born_grid() {
  Grid g;
  g.N = 12;
  g.Nt = 300;
  return g;
}

AnalyticField source_one_form(const Grid& g) {
  AnalyticField J = bump_form(1, g.L, 0b0001, TimeBump{5, 3, 8}, spatial_bump({6, 5, 7}, 2, g.L));
  J += bump_form(1, g.L, 0b0010, TimeBump{5.5, 3, 8}, spatial_bump({4, 6, 6}, 2, g.L), cplx(0.5, 0.2));
  return J;
}

AnalyticField potential(const Grid& g) {
  AnalyticField A(1, g.L);
  A += bump_form(1, g.L, 0b0001, TimeBump{6, 4, 8}, spatial_bump({5, 6, 6}, 1, g.L), 1.0);
  A += bump_form(1, g.L, 0b0010, TimeBump{6.5, 4, 8}, spatial_bump({6, 6, 5}, 1, g.L), -0.7);
  A += bump_form(1, g.L, 0b1000, TimeBump{6.5, 4, 8}, spatial_bump({6, 5, 5}, 1, g.L), 0.5);
  return A;
}

double slope(double r_big, double r_small, double ratio) { return std::log(r_big / r_small) / std::log(ratio); }

}  // namespace

TEST(BornSeries, OrderZeroIsReference) {
  Grid g = born_grid();
  g.Nt = 100;
  LatticeField f = source_one_form(g).sample(g);
  FieldGreen E0 = kg_green_pair({1}, {1.0});
  FieldMap V{"V", {1}, {1}, blk::SupportAction::local, [](const Fields& x) { return blk::tuple::scale(x, 0.3); }};
  Fields u = born_series(E0.retarded, V, 0, {f});
  LatticeField ref = kg_green(f, 1.0, Orientation::retarded);
  EXPECT_EQ((u[0] - ref).max_abs(), 0.0);
  EXPECT_THROW(born_series(E0.retarded, V, -1, {f}), std::invalid_argument);
}

TEST(BornSeries, NonCompactPotentialOverflowsTheWindow) {
  // A constant V carries the retarded tail of E0 f into the end pad.
  Grid g = born_grid();
  g.Nt = 100;
  LatticeField f = source_one_form(g).sample(g);
  FieldGreen E0 = kg_green_pair({1}, {1.0});
  FieldMap V{"V", {1}, {1}, blk::SupportAction::local, [](const Fields& x) { return blk::tuple::scale(x, 0.01); }};
  EXPECT_THROW(born_series(E0.retarded, V, 2, {f}), OrderOverflow);
}

TEST(BoxA, ExplicitDifferenceMatchesComposition) {
  Grid g = born_grid();
  g.Nt = 120;
  LatticeField A = potential(g).sample(g);
  for (int p = 0; p <= 2; ++p) {
    AnalyticField w(p, g.L);
    for (auto m : proca::sym::basis(p)) w += bump_form(p, g.L, m, TimeBump{5, 3, 8}, spatial_bump({2, 3, 4.0 + m}, 2, g.L));
    LatticeField f = w.sample(g);
    LatticeField lhs = boxA_minus_box(f, A, 0.3);
    lhs += box(f);
    LatticeField rhs = boxA(f, A, 0.3);
    EXPECT_LT((lhs - rhs).max_abs(), 1e-11 * rhs.max_abs()) << "degree " << p;
  }
}

TEST(ChargedProca, ZeroChargeIsNeutralProca) {
  Grid g = born_grid();
  g.Nt = 150;
  ChargedProca sys(ChargedBackground{0.0, 2.22, 1.0, potential(g)}, g);
  LatticeField J = source_one_form(g).sample(g);
  LatticeField W = sys.E_P(2).retarded({J})[0];
  LatticeField ref = proca_green(J, 1.0, Orientation::retarded);
  EXPECT_LT((W - ref).max_abs(), 1e-11 * ref.max_abs());
}

TEST(ChargedProca, BlockAssemblyMatchesDirectFormula) {
  Grid g = born_grid();
  g.Nt = 150;
  ChargedProca sys(ChargedBackground{0.1, 2.22, 1.0, potential(g)}, g);
  LatticeField J = source_one_form(g).sample(g);
  for (auto o : {Orientation::retarded, Orientation::advanced}) {
    LatticeField a = sys.E_P(1).get(o == Orientation::retarded)({J})[0];
    LatticeField b = sys.E_P_direct(J, 1, o);
    EXPECT_LT((a - b).max_abs(), 1e-11 * b.max_abs()) << to_string(o);
  }
}

class ChargedKappa : public ::testing::TestWithParam<double> {};

// Residual of P_A on the order-1 solution scales as q^2, for any kappa.
TEST_P(ChargedKappa, ResidualScalesAsChargeSquaredAtOrderOne) {
  Grid g = born_grid();
  LatticeField J = source_one_form(g).sample(g);
  std::vector<double> res;
  for (double q : {0.1, 0.05}) {
    ChargedProca sys(ChargedBackground{q, GetParam(), 1.0, potential(g)}, g);
    LatticeField W = sys.E_P(1).retarded({J})[0];
    res.push_back(relative_residual(sys.PA(W), J));
  }
  EXPECT_NEAR(slope(res[0], res[1], 2), 2.0, 0.2);
}

INSTANTIATE_TEST_SUITE_P(Kappa, ChargedKappa, ::testing::Values(0.0, 1.0, 2.22), [](const auto& info) {
  return "kappa_" + std::to_string(static_cast<int>(std::round(info.param * 100)));
});

TEST(ChargedProca, AdvancedResidualScalesAtOrderTwo) {
  Grid g = born_grid();
  LatticeField J = source_one_form(g).sample(g);
  std::vector<double> res;
  for (double q : {0.1, 0.05}) {
    ChargedProca sys(ChargedBackground{q, 2.22, 1.0, potential(g)}, g);
    LatticeField W = sys.E_P(2).advanced({J})[0];
    res.push_back(relative_residual(sys.PA(W), J));
  }
  EXPECT_NEAR(slope(res[0], res[1], 2), 3.0, 0.2);
}

namespace {

ProcaScalarBackground scalar_background(const Grid& g, double lambda) {
  AnalyticField v0(1, g.L);
  v0 += bump_form(1, g.L, 0b0001, TimeBump{6, 4, 8}, spatial_bump({5, 6, 6}, 1, g.L), 1.0);
  v0 += bump_form(1, g.L, 0b0100, TimeBump{6.5, 4, 8}, spatial_bump({6, 6, 5}, 1, g.L), -0.7);
  return {1.0, 0.7, lambda, v0};
}

Fields scalar_source(const Grid& g) {
  AnalyticField h = bump_form(0, g.L, 0, TimeBump{5, 3, 8}, spatial_bump({5, 5, 5}, 2, g.L), 0.8);
  return {source_one_form(g).sample(g), h.sample(g)};
}

double tuple_residual(const Fields& a, const Fields& b) {
  return blk::tuple::norm(blk::tuple::add(a, b, -1.0)) / blk::tuple::norm(b);
}

}  // namespace

TEST(ProcaScalar, ZeroCouplingDecouples) {
  Grid g = born_grid();
  g.Nt = 150;
  ProcaScalar sys(scalar_background(g, 0.0), g);
  Fields f = scalar_source(g);
  Fields u = sys.E_P(2).retarded(f);
  EXPECT_LT((u[0] - proca_green(f[0], 1.0, Orientation::retarded)).max_abs(), 1e-12 * u[0].max_abs());
  EXPECT_LT((u[1] - kg_green(f[1], 0.7, Orientation::retarded)).max_abs(), 1e-12 * u[1].max_abs());
}

TEST(ProcaScalar, ResidualSlopesMatchBornOrder) {
  Grid g = born_grid();
  Fields f = scalar_source(g);
  for (int order : {1, 2}) {
    std::vector<double> res;
    for (double lambda : {0.2, 0.1}) {
      ProcaScalar sys(scalar_background(g, lambda), g);
      res.push_back(tuple_residual(sys.P(sys.E_P(order).retarded(f)), f));
    }
    EXPECT_NEAR(slope(res[0], res[1], 2), order + 1.0, 0.2) << "order " << order;
  }
}

// The auxiliary-field route (Q on psi, V, W, phi with the LU factorisation) agrees with the direct
// Born series up to the common truncation error.
TEST(ProcaScalar, AuxiliaryRouteAgreesWithDirectSeries) {
  Grid g = born_grid();
  Fields f = scalar_source(g);
  ProcaScalar sys(scalar_background(g, 0.1), g);
  Fields direct = sys.E_P(2).retarded(f);
  Fields aux = sys.E_P_lu(2).retarded(f);
  const double res = tuple_residual(sys.P(direct), f);
  EXPECT_LT(tuple_residual(aux, direct), 10 * res);
  EXPECT_LT(tuple_residual(sys.P(aux), f), 2 * res);
}

namespace {

MultipletBackground multiplet_background(const Grid& g, double eps) {
  MultipletBackground b;
  b.m0 = 1.0;
  b.drho.assign(2, std::vector<AnalyticField>(2, AnalyticField(0, g.L)));
  b.drho[0][0] = bump_form(0, g.L, 0, TimeBump{6, 4, 8}, spatial_bump({5, 6, 6}, 1, g.L), 0.8 * eps);
  b.drho[0][1] = bump_form(0, g.L, 0, TimeBump{6.5, 4, 8}, spatial_bump({6, 5, 6}, 1, g.L), 0.5 * eps);
  b.drho[1][1] = bump_form(0, g.L, 0, TimeBump{5.5, 4, 8}, spatial_bump({6, 6, 5}, 1, g.L), 1.0 * eps);
  return b;
}

}  // namespace

TEST(ProcaMultiplet, ConstantMassIsIndependentProcaFields) {
  Grid g = born_grid();
  g.Nt = 150;
  MultipletBackground b;
  b.m0 = 1.3;
  b.drho.assign(3, std::vector<AnalyticField>(3, AnalyticField(0, g.L)));
  ProcaMultiplet sys(b, g);
  LatticeField J = source_one_form(g).sample(g);
  LatticeField J2 = J;
  J2 *= cplx(0, 2);
  Fields u = sys.E_P(2).retarded({J, J2, J});
  LatticeField ref = proca_green(J, 1.3, Orientation::retarded);
  EXPECT_LT((u[0] - ref).max_abs(), 1e-12 * ref.max_abs());
  LatticeField ref2 = ref;
  ref2 *= cplx(0, 2);
  EXPECT_LT((u[1] - ref2).max_abs(), 1e-12 * ref.max_abs());
}

TEST(ProcaMultiplet, FieldEquationAndConstraintScaleWithOrder) {
  Grid g = born_grid();
  AnalyticField Ja = source_one_form(g);
  AnalyticField Jb = bump_form(1, g.L, 0b0100, TimeBump{5, 3, 8}, spatial_bump({3, 4, 5}, 2, g.L));
  Fields J{Ja.sample(g), Jb.sample(g)};
  std::vector<double> res, con;
  for (double eps : {0.2, 0.1}) {
    ProcaMultiplet sys(multiplet_background(g, eps), g);
    Fields W = sys.E_P(1).retarded(J);
    res.push_back(tuple_residual(sys.P(W), J));
    Fields c = sys.constraint(W, J);
    Fields dJ{codiff(Ja).sample(g), codiff(Jb).sample(g)};
    con.push_back(blk::tuple::norm(c) / blk::tuple::norm(dJ));
  }
  EXPECT_NEAR(slope(res[0], res[1], 2), 2.0, 0.2);
  EXPECT_NEAR(slope(con[0], con[1], 2), 2.0, 0.2);
}

TEST(ScalarPair, ZeroCouplingDecouplesAndResidualTracksOrder) {
  Grid g = born_grid();
  AnalyticField rho = bump_form(0, g.L, 0, TimeBump{6, 4, 8}, spatial_bump({5, 6, 6}, 1, g.L));
  Fields f{bump_form(0, g.L, 0, TimeBump{5, 3, 8}, spatial_bump({6, 5, 7}, 2, g.L)).sample(g),
           bump_form(0, g.L, 0, TimeBump{5.5, 3, 8}, spatial_bump({4, 6, 6}, 2, g.L), 0.7).sample(g)};
  ScalarPair free({1.0, 0.8, 0.0, rho}, g);
  Fields u = free.E_P(2).advanced(f);
  EXPECT_EQ((u[0] - kg_green(f[0], 1.0, Orientation::advanced)).max_abs(), 0.0);
  for (int order : {1, 2}) {
    std::vector<double> res;
    for (double lambda : {0.2, 0.1}) {
      ScalarPair sys({1.0, 0.8, lambda, rho}, g);
      res.push_back(tuple_residual(sys.P(sys.E_P(order).retarded(f)), f));
    }
    EXPECT_NEAR(slope(res[0], res[1], 2), order + 1.0, 0.2) << "order " << order;
  }
}

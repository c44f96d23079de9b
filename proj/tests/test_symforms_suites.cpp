#include <gtest/gtest.h>

#include <random>

#include "proca/symforms/suites.hpp"

using namespace proca::sym;

namespace {

void expect_all_zero(const std::vector<IdentityReport>& reports) {
  for (const auto& r : reports) {
    EXPECT_TRUE(r.ok()) << r.identity_name << "\n" << (r.ok() ? "" : r.failures.front().witness_printout);
  }
}

}  // namespace

TEST(BlockOp, ApplyChecksDegrees) {
  SymBlockOp B({1}, {0});
  B.set(0, 0, ops::ext_d(0));
  EXPECT_THROW(B.set(0, 0, ops::identity(1)), std::invalid_argument);
  EXPECT_THROW(B.apply({PolyForm(1)}), std::invalid_argument);
  auto y = B.apply({PolyForm::scalar(Poly::coordinate(2))});
  EXPECT_EQ(y[0], PolyForm::basis_form(0b0100));
}

TEST(BlockOp, CompositionMatchesSequentialApplication) {
  std::mt19937_64 rng(3);
  SectionSampler s;
  Background b = random_background(rng, s);
  StructureSystem sys = charged_system(b);
  std::vector<PolyForm> x = {s.form(rng, 0), s.form(rng, 1), s.form(rng, 2)};
  auto composed = (sys.C * sys.Q)(x);
  auto sequential = sys.C(sys.Q(x));
  ASSERT_EQ(composed.size(), sequential.size());
  for (std::size_t i = 0; i < composed.size(); ++i) EXPECT_EQ(composed[i], sequential[i]);
}

TEST(AdjointExactForm, CoordinateExample) {
  PolyForm Z = PolyForm::scalar(Poly::coordinate(1));
  PolyForm W = PolyForm::basis_form(0b0001);
  EXPECT_TRUE(check_adjoint_exactform(Z, W, PolyForm(1), Rational(1)).is_zero());
}

TEST(AdjointExactForm, ZeroSectionGivesZero) {
  std::mt19937_64 rng(4);
  SectionSampler s;
  PolyForm W = s.form(rng, 2);
  PolyForm A = s.form(rng, 1, true);
  EXPECT_TRUE(check_adjoint_exactform(PolyForm(1), W, A, Rational(2)).is_zero());
}

TEST(AdjointExactForm, NonzeroWithoutTheBoundaryTerm) {
  // Dropping the exact term leaves a nonzero 4-form, so the check is not vacuous.
  PolyForm Z = PolyForm::scalar(Poly::coordinate(1));
  PolyForm W = PolyForm::basis_form(0b0010, Poly::coordinate(1));
  PolyForm full = check_adjoint_exactform(Z, W, PolyForm(1), Rational(1));
  PolyForm boundary = d(wedge(Z.conj(), hodge(W)));
  EXPECT_TRUE(full.is_zero());
  EXPECT_FALSE(boundary.is_zero());
}

TEST(IdentitySuite, AllIdentitiesVanishOverFiftyTrials) {
  auto reports = check_identity_suite(20260101, 50);
  EXPECT_EQ(reports.size(), identity_suite_names().size());
  for (const auto& r : reports) EXPECT_EQ(r.trials, 50);
  expect_all_zero(reports);
}

TEST(IdentitySuite, RejectsZeroTrials) {
  EXPECT_THROW(check_identity_suite(1, 0), std::invalid_argument);
  EXPECT_THROW(check_structure_suite(SystemTag::neutral, 1, 0), std::invalid_argument);
}

TEST(IdentitySuite, SignFlipIsReportedByName) {
  SuiteOptions opt;
  opt.mutation = Mutation::sign_flip;
  auto reports = check_identity_suite(7, 5, opt);
  for (const auto& r : reports) {
    if (r.identity_name == "dA_squared") {
      EXPECT_FALSE(r.ok());
      EXPECT_NE(r.failures.front().witness_printout.find("residual"), std::string::npos);
    } else {
      EXPECT_TRUE(r.ok()) << r.identity_name;
    }
  }
  EXPECT_THROW(require_ok(reports), IdentityViolation);
}

TEST(IdentitySuite, DeterministicForFixedSeed) {
  SuiteOptions opt;
  opt.mutation = Mutation::sign_flip;
  auto a = to_json(check_identity_suite(99, 3, opt)).dump();
  auto b = to_json(check_identity_suite(99, 3, opt)).dump();
  EXPECT_EQ(a, b);
}

TEST(IdentitySuite, ReportJsonShape) {
  auto reports = check_identity_suite(5, 1);
  auto j = reports.front().to_json();
  EXPECT_TRUE(j.contains("identity_name"));
  EXPECT_EQ(j["trials"], 1);
  EXPECT_TRUE(j["failures"].is_array());
}

class StructureSuite : public ::testing::TestWithParam<SystemTag> {};

TEST_P(StructureSuite, AllConditionsHoldOverFiftyTrials) {
  auto reports = check_structure_suite(GetParam(), 31337, 50);
  EXPECT_FALSE(reports.empty());
  expect_all_zero(reports);
}

INSTANTIATE_TEST_SUITE_P(Systems, StructureSuite,
                         ::testing::Values(SystemTag::neutral, SystemTag::neutral_alt, SystemTag::multiplet,
                                           SystemTag::charged, SystemTag::proca_scalar),
                         [](const auto& info) {
                           std::string s = to_string(info.param);
                           for (auto& c : s) {
                             if (c == '-') c = '_';
                           }
                           return s;
                         });

TEST(StructureSuite, CoversEveryCondition) {
  auto reports = check_structure_suite(SystemTag::charged, 1, 1);
  std::vector<std::string> names;
  for (const auto& r : reports) names.push_back(r.identity_name);
  for (const char* want : {"charged: pi D = id", "charged: D pi + iota_aux C = id", "charged: C D = 0",
                           "charged: pi Q D = P", "charged: C Q = N C", "charged: pi iota_aux = 0"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
  }
}

TEST(StructureSuite, DetectsWrongConstraintOperator) {
  // Replacing N_A by plain K_A on the 0-form block breaks C Q = N C once q != 0.
  std::mt19937_64 rng(8);
  SectionSampler s;
  Background b = random_background(rng, s);
  StructureSystem sys = charged_system(b);
  sys.N.set(0, 1, ops::zero(2, 0));
  bool detected = false;
  for (int t = 0; t < 5 && !detected; ++t) {
    std::vector<PolyForm> x = {s.form(rng, 0), s.form(rng, 1), s.form(rng, 2)};
    auto l = (sys.C * sys.Q)(x);
    auto r = (sys.N * sys.C)(x);
    detected = !(l[0] - r[0]).is_zero();
  }
  EXPECT_TRUE(detected);
}

TEST(Multiplet, ConstantMassReducesToNeutral) {
  Background b;
  b.m2 = Rational(3, 2);
  b.rho = {{Poly(CRational(b.m2))}};
  std::mt19937_64 rng(9);
  SectionSampler s;
  StructureSystem multi = multiplet_system(b);
  StructureSystem neu = neutral_system(b);
  std::vector<PolyForm> x = {s.form(rng, 0), s.form(rng, 1)};
  auto a = multi.Q(x);
  auto c = neu.Q(x);
  EXPECT_EQ(a[0], c[0]);
  EXPECT_EQ(a[1], c[1]);
}

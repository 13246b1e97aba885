#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "shiftsum/char_arith.hpp"
#include "shiftsum/cuspform.hpp"
#include "shiftsum/lfun.hpp"
#include "shiftsum/modular_group.hpp"
#include "test_util.hpp"

using namespace shiftsum;

// Reference values: mpmath (tests/oracles/oracles.py). L(f, s) there comes from
// the incomplete-gamma split at 1/sqrt(11); Lambda from quadrature of f along
// the vertical line, mapped to the cusp for small heights.

namespace {

std::shared_ptr<const CuspFormCoefficients> form() {
  static const auto a = std::make_shared<const CuspFormCoefficients>(eta_product_coeffs(250000));
  return a;
}

const DirichletCharacter chi = make_character(11, 2);

}  // namespace

TEST(DirichletL, Oracle) {
  const PrecisionPolicy pol;
  EXPECT_CPLX_NEAR(dirichlet_l(chi.conj(), 2.5, pol).value, 0.98088156047571521, -0.12651843603555941, 1e-12);
  EXPECT_CPLX_NEAR(dirichlet_l(chi.conj(), {3.0, 1.0}, pol).value, 0.95848594391515712, -0.070731685214921914, 1e-12);
  // below the sharp-truncation budget: Gaussian cutoff with the X^{-2} term removed
  const auto r = dirichlet_l(chi, 2.0, pol);
  EXPECT_TRUE(r.smoothed);
  EXPECT_CPLX_NEAR(r.value, 0.94431158005757225, 0.16022433204748269, 1e-13);
}

TEST(DirichletL, EulerProductAgrees) {
  const PrecisionPolicy pol;
  const cplx s(3.0, -0.5);
  const cplx sum = dirichlet_l(chi, s, pol).value;
  EXPECT_LE(std::abs(sum - dirichlet_l_euler_product(chi, s, 20000)), 1e-9);
}

TEST(DirichletL, RejectsPrincipalAndHalfPlane) {
  const PrecisionPolicy pol;
  EXPECT_THROW(dirichlet_l(DirichletCharacter::principal(11), 2.0, pol), PreconditionError);
  EXPECT_NO_THROW(dirichlet_l(DirichletCharacter::principal(11), 4.0, pol, true));
  EXPECT_THROW(dirichlet_l(DirichletCharacter::principal(11), 2.0, pol, true), BudgetError);
  EXPECT_THROW(dirichlet_l(chi, 0.9, pol), PreconditionError);
}

TEST(LF, Oracle) {
  const PrecisionPolicy pol;
  EXPECT_CPLX_NEAR(l_f(*form(), 4.0, pol).value, 0.87242079831967455, 0.0, 1e-12);
  const auto r2 = l_f(*form(), 2.0, pol);
  EXPECT_TRUE(r2.smoothed);
  EXPECT_CPLX_NEAR(r2.value, 0.54604803621501352, 0.0, 1e-13);
  EXPECT_LE(std::abs(r2.value - 0.54604803621501352), r2.error_estimate + 1e-15);
  EXPECT_CPLX_NEAR(l_f(*form(), {1.8, 0.5}, pol).value, 0.50415229630521714, 0.13852810115913763, 1e-13);
}

TEST(LF, EulerProductAgrees) {
  const PrecisionPolicy pol;
  EXPECT_LE(std::abs(l_f(*form(), 4.0, pol).value - l_f_euler_product(*form(), 4.0, 5000)), 1e-10);
}

TEST(LF, Preconditions) {
  const PrecisionPolicy pol;
  EXPECT_THROW(l_f(*form(), 1.4, pol), PreconditionError);
  EXPECT_THROW(euler_ratio_identity(*form(), chi, 2.5, 1.4, pol), PreconditionError);
}

TEST(LF, BudgetErrorWhenCoefficientsRunOut) {
  const PrecisionPolicy pol;
  const auto small = eta_product_coeffs(1000);
  EXPECT_THROW(l_f(small, 1.8, pol), BudgetError);
}

TEST(EulerRatio, IdentityHolds) {
  const PrecisionPolicy pol;
  for (const auto& [s, t] : {std::pair<cplx, cplx>{2.5, 1.8}, {{2.2, 0.3}, {2.0, -0.4}}, {1.5, 3.0}}) {
    const auto [lhs, rhs] = euler_ratio_identity(*form(), chi, s, t, pol);
    EXPECT_LE(std::abs(lhs.value - rhs), 1e-6 * std::abs(rhs)) << s << " " << t;
  }
}

TEST(EulerRatio, AllOnesDiagnostic) {
  const PrecisionPolicy pol;
  const auto [lhs, rhs] = euler_ratio_identity(*form(), DirichletCharacter::principal(11), 2.5, 1.8, pol);
  EXPECT_LE(std::abs(lhs.value - rhs), 1e-6 * std::abs(rhs));
}

TEST(LambdaTwist, Oracle) {
  const PrecisionPolicy pol;
  const auto r = lambda_twist(*form(), {1.3, 11, 1}, pol);
  EXPECT_CPLX_NEAR(r.value, 0.34705916101363801, -0.027994395456362312, 1e-13);
  EXPECT_LE(r.error_estimate, 1e-12);
  EXPECT_CPLX_NEAR(lambda_twist(*form(), {{1.0, 0.5}, 11, 2}, pol).value, 2.4075156782869455, -0.16085572518047672,
                   1e-12);
}

TEST(LambdaTwist, FunctionalEquation) {
  // Lambda(f, t, -d/c) = -Lambda(f, 2 - t, a/c) with ad = 1 mod c
  const PrecisionPolicy pol;
  std::mt19937 rng(9);
  for (int k = 0; k < 20; ++k) {
    const int64_t c = 11 * (1 + static_cast<int64_t>(rng() % 20));
    int64_t d = 1 + static_cast<int64_t>(rng() % static_cast<uint64_t>(c - 1));
    while (gcd(d, c) != 1) ++d;
    const int64_t a = mod_inverse(d, c);
    const cplx t(0.5 + (rng() % 100) / 100.0, (static_cast<int>(rng() % 200) - 100) / 50.0);
    const cplx lhs = lambda_twist(*form(), {t, c, d}, pol).value;
    const cplx rhs = -lambda_twist(*form(), {2.0 - t, c, -a}, pol).value;
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::max(1.0, std::abs(lhs))) << c << " " << d << " " << t;
  }
}

TEST(LambdaTwist, PeriodicInD) {
  const PrecisionPolicy pol;
  const cplx a = lambda_twist(*form(), {1.2, 22, 3}, pol).value;
  const cplx b = lambda_twist(*form(), {1.2, 22, 3 + 22}, pol).value;
  EXPECT_LE(std::abs(a - b), 1e-14);
}

TEST(LambdaTwist, TermsGrowWithModulus) {
  EXPECT_LT(lambda_twist_terms(11, 1.0, 1e-13), lambda_twist_terms(110, 1.0, 1e-13));
  EXPECT_LT(lambda_twist_terms(110, 1.0, 1e-8), lambda_twist_terms(110, 1.0, 1e-13));
}

TEST(TwistTable, RowMatchesDirect) {
  TwistTable table(form(), PrecisionPolicy{});
  const PrecisionPolicy pol;
  const auto row = table.row(33, 1.0);
  ASSERT_EQ(row->size(), 33u);
  for (int64_t d = 0; d < 33; ++d) {
    if (gcd(d, 33) != 1) {
      EXPECT_EQ((*row)[d], cplx(0.0, 0.0));
      continue;
    }
    EXPECT_LE(std::abs((*row)[d] - lambda_twist(*form(), {1.0, 33, d}, pol).value), 1e-13) << d;
  }
  const cplx t(1.6, 0.2);
  EXPECT_LE(std::abs(table.lambda(44, 5, t) - lambda_twist(*form(), {t, 44, 5}, pol).value), 1e-13);
}

TEST(TwistTable, CachesRows) {
  TwistTable table(form(), PrecisionPolicy{});
  EXPECT_EQ(table.cached_rows(), 0u);
  const auto r1 = table.row(22, 1.0);
  const auto r2 = table.row(22, 1.0);
  EXPECT_EQ(r1.get(), r2.get());
  EXPECT_EQ(table.cached_rows(), 1u);
  table.row(22, 1.5);
  EXPECT_EQ(table.cached_rows(), 2u);
}

TEST(TwistTable, ConcurrentLookups) {
  TwistTable table(form(), PrecisionPolicy{});
  std::vector<std::thread> pool;
  std::vector<cplx> out(4);
  for (int k = 0; k < 4; ++k)
    pool.emplace_back([&, k] { out[k] = table.lambda(55, 2, 1.0); });
  for (auto& th : pool) th.join();
  for (int k = 1; k < 4; ++k) EXPECT_EQ(out[k], out[0]);
  EXPECT_EQ(table.cached_rows(), 1u);
}

TEST(TwistTable, GrowthConstantPositive) {
  TwistTable table(form(), PrecisionPolicy{});
  const double c0 = table.growth_constant(110, 1.0, 1.6);
  EXPECT_GT(c0, 0.0);
  for (int64_t c = 11; c <= 110; c += 11)
    for (const cplx v : *table.row(c, 1.0)) EXPECT_LE(std::abs(v), c0 * std::pow(c, 1.6) * (1 + 1e-12));
}

TEST(ModularSymbol, MatchesEichlerCoboundary) {
  const PrecisionPolicy pol;
  const UpperHalfPlanePoint z(0.1, 0.8);
  for (const GammaMatrix g : {GammaMatrix{2, 1, 11, 6}, GammaMatrix{6, 1, 11, 2}, GammaMatrix{4, -1, 33, -8}}) {
    const cplx cob = eval_F(*form(), UpperHalfPlanePoint(g.act(z.z())), pol) - eval_F(*form(), z, pol);
    EXPECT_LE(std::abs(modular_symbol(*form(), g, pol) - cob), 1e-11);
  }
}

TEST(ModularSymbol, ParabolicVanishes) {
  const PrecisionPolicy pol;
  EXPECT_LE(std::abs(modular_symbol(*form(), {1, 0, 11, 1}, pol)), 1e-13);
}

TEST(ModularSymbol, Homomorphism) {
  TwistTable table(form(), PrecisionPolicy{});
  const GammaMatrix g1{2, 1, 11, 6}, g2{3, 1, 11, 4};
  const cplx lhs = table.modular_symbol(g1 * g2);
  EXPECT_LE(std::abs(lhs - table.modular_symbol(g1) - table.modular_symbol(g2)), 1e-11);
}

TEST(ModularSymbol, TableMatchesFreeFunction) {
  TwistTable table(form(), PrecisionPolicy{});
  const GammaMatrix g{4, -1, 33, -8};
  EXPECT_LE(std::abs(table.modular_symbol(g) - modular_symbol(*form(), g, PrecisionPolicy{})), 1e-14);
}

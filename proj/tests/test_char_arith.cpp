#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "shiftsum/char_arith.hpp"
#include "test_util.hpp"

using namespace shiftsum;

TEST(Arith, GcdAndInverse) {
  EXPECT_EQ(gcd(12, 18), 6);
  EXPECT_EQ(gcd(-12, 18), 6);
  EXPECT_EQ(gcd(0, 7), 7);
  EXPECT_EQ(mod(-3, 11), 8);
  EXPECT_EQ(mod_inverse(3, 11), 4);
  EXPECT_THROW(mod_inverse(11, 22), PreconditionError);
}

TEST(Arith, InverseProperty) {
  for (int64_t c : {11, 22, 121, 1100})
    for (int64_t d = 1; d < c; ++d)
      if (gcd(d, c) == 1) EXPECT_EQ(mod(d * mod_inverse(d, c), c), 1);
}

TEST(Arith, MultiplicativeFunctions) {
  EXPECT_EQ(euler_phi(1), 1);
  EXPECT_EQ(euler_phi(11), 10);
  EXPECT_EQ(euler_phi(36), 12);
  EXPECT_EQ(divisor_count(36), 9);
  EXPECT_EQ(moebius(30), -1);
  EXPECT_EQ(moebius(12), 0);
  EXPECT_EQ(moebius(1), 1);
  EXPECT_EQ(divisors(12), (std::vector<int64_t>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(primes_up_to(20), (std::vector<int64_t>{2, 3, 5, 7, 11, 13, 17, 19}));
  EXPECT_TRUE(is_prime(1009));
  EXPECT_FALSE(is_prime(1001));
}

TEST(Arith, MoebiusSumsToZero) {
  for (int64_t n = 2; n <= 200; ++n) {
    int s = 0;
    for (int64_t d : divisors(n)) s += moebius(d);
    EXPECT_EQ(s, 0) << n;
  }
}

TEST(Character, DefaultIsEvenPrimitive) {
  const auto chi = make_character(11, 2);
  EXPECT_EQ(chi.generator(), 2);
  EXPECT_EQ(chi.parity(), 1);
  EXPECT_TRUE(chi.is_primitive());
  EXPECT_FALSE(chi.is_principal());
  EXPECT_EQ(chi(0), cplx(0.0, 0.0));
  EXPECT_EQ(chi(22), cplx(0.0, 0.0));
}

TEST(Character, OddCharacter) {
  const auto chi = make_character(11, 1);
  EXPECT_EQ(chi.parity(), -1);
  EXPECT_NEAR(std::abs(chi(-1) + 1.0), 0.0, 1e-15);
}

TEST(Character, RejectsTrivialAndNonCyclic) {
  EXPECT_THROW(make_character(11, 0), PreconditionError);
  EXPECT_THROW(make_character(11, 10), PreconditionError);
  EXPECT_THROW(make_character(15, 1), PreconditionError);
}

TEST(Character, Multiplicative) {
  for (int64_t idx = 1; idx < 10; ++idx) {
    const auto chi = make_character(11, idx);
    for (int64_t a = 0; a < 30; ++a)
      for (int64_t b = 0; b < 30; ++b) EXPECT_LE(std::abs(chi(a * b) - chi(a) * chi(b)), 1e-14);
  }
}

TEST(Character, Orthogonality) {
  const auto chi = make_character(11, 2);
  cplx row = 0.0;
  for (int64_t a = 0; a < 11; ++a) row += chi(a);
  EXPECT_LT(std::abs(row), 1e-14);
  for (int64_t a = 1; a < 11; ++a) EXPECT_LE(std::abs(chi(a) * chi.conj()(a) - 1.0), 1e-15);
}

TEST(Character, ExactRotations) {
  const auto chi = make_character(11, 2);
  EXPECT_EQ(chi.rotation(1), 0);
  EXPECT_EQ(chi.rotation(2), 2);
  EXPECT_FALSE(chi.rotation(11).has_value());
  // rotations add exactly under multiplication
  for (int64_t a = 1; a < 11; ++a)
    for (int64_t b = 1; b < 11; ++b)
      EXPECT_EQ(*chi.rotation(a * b), (*chi.rotation(a) + *chi.rotation(b)) % chi.order_denominator());
}

TEST(Character, GaussSumOracle) {
  const auto chi = make_character(11, 2);
  EXPECT_CPLX_NEAR(gauss_sum(chi), 2.6361055643248352, 2.0126965627574471, 1e-13);
  EXPECT_CPLX_NEAR(gauss_sum(chi.conj()), 2.6361055643248352, -2.0126965627574471, 1e-13);
}

TEST(Character, GaussSumModulus) {
  for (int64_t idx = 1; idx < 10; ++idx) {
    const auto chi = make_character(11, idx);
    EXPECT_NEAR(std::abs(gauss_sum(chi)), std::sqrt(11.0), 1e-13) << idx;
  }
  // W(chi) W(conj chi) = chi(-1) N
  const auto chi = make_character(11, 3);
  EXPECT_LE(std::abs(gauss_sum(chi) * gauss_sum(chi.conj()) - chi(-1) * 11.0), 1e-12);
}

TEST(DivisorSums, SigmaChi) {
  const auto chi = make_character(11, 2);
  EXPECT_LE(std::abs(sigma_chi(chi, 2.0, 1) - 1.0), 1e-15);
  // sigma_t(p) = 1 + chi(p) p^t
  EXPECT_LE(std::abs(sigma_chi(chi, 3.0, 7) - (1.0 + chi(7) * 343.0)), 1e-12);
  // multiplicative in coprime arguments
  std::mt19937 rng(5);
  for (int k = 0; k < 50; ++k) {
    const int64_t m = 1 + rng() % 200, n = 1 + rng() % 200;
    if (gcd(m, n) != 1) continue;
    const cplx t(1.5, 0.3);
    const cplx lhs = sigma_chi(chi, t, m * n), rhs = sigma_chi(chi, t, m) * sigma_chi(chi, t, n);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::abs(rhs));
  }
}

TEST(DivisorSums, NormalizedTableMatchesDirect) {
  const auto chi = make_character(11, 2);
  const cplx t(2.0, -0.5);
  const auto tab = sigma_chi_normalized_table(chi, t, 500);
  for (int64_t m = 1; m <= 500; ++m) {
    const cplx direct = sigma_chi(chi, t, m) / std::pow(static_cast<double>(m), t);
    EXPECT_LE(std::abs(tab[m] - direct), 1e-12 * std::max(1.0, std::abs(direct))) << m;
  }
}

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cube_fourier.hpp"
#include "error.hpp"
#include "fkn_weights.hpp"

using namespace phistab;

TEST(Varphi, Examples) {
  EXPECT_DOUBLE_EQ(varphi(0.25), 0.125);
  EXPECT_DOUBLE_EQ(varphi(0.5), 0.25);
  EXPECT_DOUBLE_EQ(varphi(0.0), 0.0);
  EXPECT_DOUBLE_EQ(varphi(1.0), 0.0);
  EXPECT_DOUBLE_EQ(varphi(0.75), varphi(0.25));
  EXPECT_THROW(varphi(1.1), Error);
  EXPECT_THROW(phi_chang(0.0), Error);
}

TEST(Varphi, PiecesAndContinuity) {
  for (double t = 0.001; t <= 0.25; t += 0.001) {
    const double expected = std::min(2 * t * t * std::log(1 / t), 2 * t * t * (1 / std::sqrt(t) - 1));
    EXPECT_NEAR(phi_chang(t), expected, 1e-15);
  }
  for (double t = 0.2501; t <= 0.5; t += 0.001) EXPECT_DOUBLE_EQ(phi_chang(t), t / 2);
  EXPECT_NEAR(phi_chang(0.25 - 1e-9), phi_chang(0.25 + 1e-9), 1e-8);
}

TEST(OmegaFkn, Examples) {
  EXPECT_NEAR(omega_fkn(0.5, 0.25), 3.0 / 16.0, 1e-15);
  EXPECT_NEAR(omega_fkn(0.5, 0.5), 0.25, 1e-15);
  EXPECT_NEAR(omega_fkn(0.5, 0.0), 0.25, 1e-15);
  EXPECT_THROW(omega_fkn(0.5, 0.6), Error);
  EXPECT_THROW(omega_fkn(0.3, 0.4), Error);
}

TEST(OmegaKhintchine, Examples) {
  EXPECT_NEAR(omega_khintchine(0.5), 0.25, 1e-15);
  EXPECT_NEAR(omega_khintchine(0.0), 1.0 / (2 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(omega_khintchine(0.0), 0.159155, 1e-6);
  // At beta = 1/4 the recursive bound is the smaller one.
  EXPECT_GT(omega_khintchine(0.25), 3.0 / 16.0);
  EXPECT_THROW(omega_khintchine(0.51), Error);
}

TEST(OmegaMin, Examples) {
  EXPECT_NEAR(omega_min(0.5), 0.25, 1e-15);
  EXPECT_NEAR(omega_min(0.0), 1.0 / (2 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(omega_min(0.25), 3.0 / 16.0, 1e-15);
  for (double beta = 0.0; beta <= 0.5; beta += 0.01) {
    EXPECT_LE(omega_min(beta), 0.25 + 1e-15);
    EXPECT_GE(omega_min(beta), beta * beta - 1e-15);
    EXPECT_NEAR(omega_min(beta), omega_min(beta + 1e-9), 1e-6);
  }
}

TEST(Exhaustive, Examples) {
  const WeightMaximum w3 = exhaustive_W(3, 0.5);
  EXPECT_DOUBLE_EQ(w3.value, 0.25);
  EXPECT_DOUBLE_EQ(degree_weights(wht(w3.witness)).w[1], 0.25);
  EXPECT_DOUBLE_EQ(w3.witness.mean(), 0.5);

  const WeightMaximum w4 = exhaustive_W(4, 0.25);
  EXPECT_DOUBLE_EQ(w4.value, 0.125);
  EXPECT_DOUBLE_EQ(w4.witness.mean(), 0.25);
  EXPECT_DOUBLE_EQ(degree_weights(wht(w4.witness)).w[1], 0.125);

  const auto wb = exhaustive_W_beta(4, 0.5, 0.25);
  ASSERT_TRUE(wb.has_value());
  EXPECT_EQ(wb->value, 3.0 / 16.0);
  EXPECT_EQ(wb->numerator, 48u);
}

TEST(Exhaustive, EmptyWhenUnreachable) {
  EXPECT_FALSE(exhaustive_W_beta(2, 0.5, 0.125).has_value());
  EXPECT_THROW(exhaustive_W(5, 0.5), Error);
  EXPECT_THROW(exhaustive_W(3, 0.3), Error);
}

TEST(Exhaustive, SoundnessOverAllBalancedFourVariableFunctions) {
  std::size_t balanced = 0;
  for (std::uint64_t table = 0; table < (1u << 16); ++table) {
    if (__builtin_popcountll(table) != 8) continue;
    ++balanced;
    const FirstOrder fo = first_order(4, table);
    const double w1 = fo.sum_sq / 256.0;
    const double beta = fo.max_abs / 16.0;
    EXPECT_LE(w1, omega_min(beta) + 1e-12) << std::hex << table;
  }
  EXPECT_EQ(balanced, 12870u);
}

TEST(FirstOrder, MatchesTransform) {
  for (std::uint64_t table : {0x0000ull, 0xaaaaull, 0x6996ull, 0x1234ull, 0xfe01ull}) {
    const FourierSpectrum s = wht(BooleanFunction::from_table(4, table));
    const FirstOrder fo = first_order(4, table);
    double sum = 0.0;
    double max_abs = 0.0;
    for (int i = 0; i < 4; ++i) {
      sum += s.coeffs[1u << i] * s.coeffs[1u << i];
      max_abs = std::max(max_abs, std::abs(s.coeffs[1u << i]));
    }
    EXPECT_DOUBLE_EQ(fo.sum_sq / 256.0, sum);
    EXPECT_DOUBLE_EQ(fo.max_abs / 16.0, max_abs);
  }
}

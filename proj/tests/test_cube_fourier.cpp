#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cube_fourier.hpp"
#include "error.hpp"

using namespace phistab;

namespace {

// x_j in {-1, +1} from the point index, written out coordinate by coordinate.
int coord(std::size_t x, int j) { return ((x >> (j - 1)) & 1u) ? 1 : -1; }

double direct_coefficient(const BooleanFunction& f, std::size_t mask) {
  double sum = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x) {
    int chi = 1;
    for (int j = 1; j <= f.dimension(); ++j) {
      if ((mask >> (j - 1)) & 1u) chi *= coord(x, j);
    }
    sum += (f.value(x) ? 1.0 : 0.0) * chi;
  }
  return sum / static_cast<double>(f.size());
}

// E[f(Y) | X = x] with P(Y_j = y | X_j = x) = (1 + rho x y) / 2.
double direct_noise(const BooleanFunction& f, double rho, std::size_t x) {
  double sum = 0.0;
  for (std::size_t y = 0; y < f.size(); ++y) {
    double w = 1.0;
    for (int j = 1; j <= f.dimension(); ++j) w *= (1.0 + rho * coord(x, j) * coord(y, j)) / 2.0;
    sum += w * (f.value(y) ? 1.0 : 0.0);
  }
  return sum;
}

BooleanFunction random_function(int n, std::mt19937_64& rng) {
  BooleanFunction f(n);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t x = 0; x < f.size(); ++x) f.set(x, coin(rng));
  return f;
}

}  // namespace

TEST(Encoding, NibbleOrderPutsLowPointsFirst) {
  const BooleanFunction d = dictator(2, 1, 1);  // points 1 and 3
  EXPECT_EQ(d.encode(), "n:2;table:a");
  EXPECT_EQ(BooleanFunction::parse("n:2;table:a"), d);
  EXPECT_EQ(BooleanFunction::parse("n:3;table:F0").encode(), "n:3;table:f0");
  EXPECT_TRUE(BooleanFunction::parse("n:3;table:f0").value(0));
  EXPECT_FALSE(BooleanFunction::parse("n:3;table:f0").value(4));
}

TEST(Encoding, RoundTripsRandomTables) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 9; ++n) {
    const BooleanFunction f = random_function(n, rng);
    EXPECT_EQ(BooleanFunction::parse(f.encode()), f) << f.encode();
  }
}

TEST(Encoding, ErrorsNameThePosition) {
  auto message = [](const char* text) {
    try {
      BooleanFunction::parse(text);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::parse);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("n:3;table:ag").find("position 11"), std::string::npos);
  EXPECT_NE(message("m:3;table:aa").find("position 0"), std::string::npos);
  EXPECT_NE(message("n:3;tabel:aa").find("position 3"), std::string::npos);
  EXPECT_NE(message("n:3;table:aaa").find("hex digits"), std::string::npos);
  EXPECT_NE(message("n:1;table:4").find("beyond"), std::string::npos);
  EXPECT_NE(message("n:0;table:1").find("dimension"), std::string::npos);
}

TEST(Encoding, OrderingIsByDimensionThenTable) {
  EXPECT_LT(BooleanFunction::from_table(2, 0xf), BooleanFunction::from_table(3, 0x1));
  EXPECT_LT(BooleanFunction::from_table(3, 0x0f), BooleanFunction::from_table(3, 0xf0));
}

TEST(Wht, Examples) {
  const FourierSpectrum d = wht(dictator(2, 1, 1));
  EXPECT_EQ(d.coeffs, (std::vector<double>{0.5, 0.5, 0.0, 0.0}));

  BooleanFunction one(3);
  for (std::size_t x = 0; x < one.size(); ++x) one.set(x, true);
  const FourierSpectrum c = wht(one);
  EXPECT_DOUBLE_EQ(c.coeffs[0], 1.0);
  for (std::size_t m = 1; m < c.coeffs.size(); ++m) EXPECT_DOUBLE_EQ(c.coeffs[m], 0.0);

  const BooleanFunction eq = BooleanFunction::from_table(2, 0b1001);  // 1{x1 = x2}
  const FourierSpectrum e = wht(eq);
  EXPECT_EQ(e.coeffs, (std::vector<double>{0.5, 0.0, 0.0, 0.5}));
}

TEST(Wht, MatchesDirectSummation) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 7; ++n) {
    const BooleanFunction f = random_function(n, rng);
    const FourierSpectrum s = wht(f);
    for (std::size_t m = 0; m < f.size(); ++m) EXPECT_NEAR(s.coeffs[m], direct_coefficient(f, m), 1e-14);
  }
}

TEST(Wht, ParsevalAndInverse) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const BooleanFunction f = random_function(1 + trial % 10, rng);
    const FourierSpectrum s = wht(f);
    double energy = 0.0;
    for (double c : s.coeffs) energy += c * c;
    EXPECT_NEAR(energy, f.mean(), 1e-12);
    EXPECT_DOUBLE_EQ(s.coeffs[0], f.mean());
    const std::vector<double> back = inverse_wht(s);
    for (std::size_t x = 0; x < f.size(); ++x) EXPECT_NEAR(back[x], f.value(x) ? 1.0 : 0.0, 1e-12);
  }
}

TEST(Wht, RejectsOversizedDimension) {
  EXPECT_THROW(BooleanFunction(21), Error);
  EXPECT_THROW(BooleanFunction(0), Error);
}

TEST(DegreeWeights, Examples) {
  EXPECT_EQ(degree_weights(wht(dictator(2, 1, 1))).w, (std::vector<double>{0.25, 0.25, 0.0}));
  EXPECT_EQ(degree_weights(wht(BooleanFunction::from_table(2, 0b1001))).w, (std::vector<double>{0.25, 0.0, 0.25}));
  EXPECT_EQ(degree_weights(wht(BooleanFunction(3))).w, (std::vector<double>{0.0, 0.0, 0.0, 0.0}));
}

TEST(DegreeWeights, SumToMean) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const BooleanFunction f = random_function(2 + trial % 8, rng);
    const DegreeWeights w = degree_weights(wht(f));
    ASSERT_EQ(w.w.size(), static_cast<std::size_t>(f.dimension()) + 1);
    double total = 0.0;
    for (double v : w.w) total += v;
    EXPECT_NEAR(total, f.mean(), 1e-12);
    EXPECT_NEAR(w.w[0], f.mean() * f.mean(), 1e-15);
  }
}

TEST(NoiseOperator, Examples) {
  const BooleanFunction d = dictator(3, 1, 1);
  for (std::size_t x = 0; x < d.size(); ++x) {
    const double expected = (x & 1u) ? (1.0 + 0.4) / 2.0 : (1.0 - 0.4) / 2.0;
    EXPECT_NEAR(noise_operator_fourier(d, 0.4, x), expected, 1e-15);
    EXPECT_NEAR(noise_operator_direct(d, 0.4, x), expected, 1e-15);
  }
  const BooleanFunction eq = BooleanFunction::from_table(2, 0b1001);
  for (std::size_t x = 0; x < 4; ++x) {
    const int product = coord(x, 1) * coord(x, 2);
    EXPECT_NEAR(noise_operator_direct(eq, 0.5, x), (1.0 + 0.25 * product) / 2.0, 1e-15);
  }
  BooleanFunction one(4);
  for (std::size_t x = 0; x < one.size(); ++x) one.set(x, true);
  EXPECT_NEAR(noise_operator_direct(one, 0.3, 7), 1.0, 1e-15);
}

TEST(NoiseOperator, FourierMatchesDirectAndOracle) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 8;
    const BooleanFunction f = random_function(n, rng);
    const double rho = unit(rng);
    const FourierSpectrum s = wht(f);
    const std::vector<double> smoothed = noise_smoothed(s, rho);
    for (std::size_t x = 0; x < f.size(); ++x) {
      const double oracle = direct_noise(f, rho, x);
      EXPECT_NEAR(smoothed[x], oracle, 1e-12);
      EXPECT_NEAR(noise_operator_fourier(s, rho, x), oracle, 1e-12);
      EXPECT_NEAR(noise_operator_direct(f, rho, x), oracle, 1e-12);
    }
  }
}

TEST(NoiseOperator, Endpoints) {
  std::mt19937_64 rng(17);
  const BooleanFunction f = random_function(6, rng);
  const FourierSpectrum s = wht(f);
  const std::vector<double> identity = noise_smoothed(s, 1.0);
  const std::vector<double> flat = noise_smoothed(s, 0.0);
  for (std::size_t x = 0; x < f.size(); ++x) {
    EXPECT_NEAR(identity[x], f.value(x) ? 1.0 : 0.0, 1e-12);
    EXPECT_NEAR(flat[x], f.mean(), 1e-12);
  }
}

TEST(NoiseOperator, RejectsBadRho) {
  const BooleanFunction d = dictator(2, 1, 1);
  EXPECT_THROW(noise_operator_fourier(d, 1.5, 0), Error);
  EXPECT_THROW(noise_operator_direct(d, -0.1, 0), Error);
  EXPECT_THROW(noise_operator_direct(d, 0.5, 4), Error);
  EXPECT_THROW(noise_operator_direct(BooleanFunction(13), 0.5, 0), Error);
}

TEST(Constructors, Dictator) {
  const BooleanFunction d = dictator(3, 2, 1);
  for (std::size_t x = 0; x < d.size(); ++x) EXPECT_EQ(d.value(x), ((x >> 1) & 1u) == 1u);
  for (int n = 1; n <= 5; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (int sign : {-1, 1}) {
        const BooleanFunction f = dictator(n, k, sign);
        EXPECT_DOUBLE_EQ(f.mean(), 0.5);
        EXPECT_DOUBLE_EQ(degree_weights(wht(f)).w[1], 0.25);
      }
    }
  }
  EXPECT_THROW(dictator(3, 4, 1), Error);
  EXPECT_THROW(dictator(3, 0, 1), Error);
  EXPECT_THROW(dictator(3, 1, 0), Error);
}

TEST(Constructors, Subcube) {
  const BooleanFunction f = subcube_indicator(3, {{2, 1}, {3, 1}});
  EXPECT_DOUBLE_EQ(f.mean(), 0.25);
  EXPECT_DOUBLE_EQ(degree_weights(wht(f)).w[1], 0.125);
  const BooleanFunction all = subcube_indicator(3, {});
  EXPECT_EQ(all.popcount(), 8u);
  EXPECT_THROW(subcube_indicator(3, {{2, 1}, {2, -1}}), Error);
  EXPECT_THROW(subcube_indicator(3, {{4, 1}}), Error);
}

TEST(Constructors, Complement) {
  const BooleanFunction f = BooleanFunction::from_table(3, 0x96);
  const BooleanFunction g = f.complement();
  EXPECT_EQ(g.popcount(), 4u);
  for (std::size_t x = 0; x < 8; ++x) EXPECT_NE(f.value(x), g.value(x));
}

#include <gtest/gtest.h>

#include <cmath>

#include "optimize.hpp"
#include "simplex_lp.hpp"

using namespace phistab;

TEST(GridPoint, EndpointsExact) {
  EXPECT_EQ(grid_point(0.1, 0.7, 0, 7), 0.1);
  EXPECT_EQ(grid_point(0.1, 0.7, 6, 7), 0.7);
  EXPECT_NEAR(grid_point(0.0, 1.0, 1, 5), 0.25, 1e-16);
  EXPECT_EQ(grid_point(0.3, 0.9, 0, 1), 0.3);
}

TEST(ArgmaxFirst, TiesAndInfeasible) {
  EXPECT_EQ(argmax_first({1.0, 3.0, 3.0, 2.0}), 1u);
  EXPECT_EQ(argmax_first({kInfeasible, std::nan(""), -5.0}), 2u);
  EXPECT_EQ(argmax_first({kInfeasible, kInfeasible}), 2u);
  EXPECT_EQ(argmax_first({}), 0u);
}

TEST(EvaluateGrid, SameValuesForAnyWorkerCount) {
  auto f = [](double x) { return std::sin(7 * x); };
  const auto one = evaluate_grid(f, 0.0, 2.0, 101, 1);
  const auto four = evaluate_grid(f, 0.0, 2.0, 101, 4);
  EXPECT_EQ(one, four);
}

TEST(GoldenSection, FindsInteriorMaximum) {
  const Optimum1D r = golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-12);
  EXPECT_NEAR(r.x, 0.3, 1e-6);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
}

TEST(GridRefine, EscapesLocalMaxima) {
  // Two bumps; the taller one is narrow.
  auto f = [](double x) { return std::exp(-50 * (x - 0.2) * (x - 0.2)) + 1.2 * std::exp(-2000 * (x - 0.77) * (x - 0.77)); };
  const Optimum1D r = grid_refine_max(f, 0.0, 1.0, 200, 1e-12, 1);
  EXPECT_NEAR(r.x, 0.77, 1e-5);
  EXPECT_NEAR(r.value, 1.2, 1e-6);
}

TEST(GridRefine, EndpointMaximum) {
  const Optimum1D r = grid_refine_max([](double x) { return x; }, 0.0, 1.0, 11, 1e-12, 1);
  EXPECT_EQ(r.x, 1.0);
  EXPECT_EQ(r.value, 1.0);
}

TEST(NelderMead, Quadratic) {
  auto f = [](const std::vector<double>& x) { return -(x[0] - 0.2) * (x[0] - 0.2) - 3 * (x[1] + 0.4) * (x[1] + 0.4); };
  const OptimumND r = nelder_mead_max(f, {0.5, 0.5}, {0.1, 0.1}, {-1, -1}, {1, 1}, 1e-14);
  EXPECT_NEAR(r.x[0], 0.2, 1e-5);
  EXPECT_NEAR(r.x[1], -0.4, 1e-5);
}

TEST(NelderMead, RespectsBox) {
  auto f = [](const std::vector<double>& x) { return x[0] + x[1]; };
  const OptimumND r = nelder_mead_restarts(f, {0.1, 0.1}, {0.1, 0.1}, {0, 0}, {0.5, 0.25}, 1e-14);
  EXPECT_LE(r.x[0], 0.5);
  EXPECT_LE(r.x[1], 0.25);
  EXPECT_NEAR(r.value, 0.75, 1e-9);
}

TEST(NelderMead, RestartsDoNoWorse) {
  // Rosenbrock valley; a single run may stop early.
  auto f = [](const std::vector<double>& x) {
    return -(100 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]) + (1 - x[0]) * (1 - x[0]));
  };
  const OptimumND once = nelder_mead_max(f, {-1.2, 1.0}, {0.5, 0.5}, {-2, -2}, {2, 2}, 1e-14, 200);
  const OptimumND again = nelder_mead_restarts(f, {-1.2, 1.0}, {0.5, 0.5}, {-2, -2}, {2, 2}, 1e-14, 12, 200);
  EXPECT_GE(again.value, once.value);
  EXPECT_NEAR(again.x[0], 1.0, 1e-3);
}

TEST(Simplex, SmallProgram) {
  // max 3x + 2y s.t. x + y + s1 = 4, x + 3y + s2 = 6
  const LpResult r = simplex_max({{1, 1, 1, 0}, {1, 3, 0, 1}}, {4, 6}, {3, 2, 0, 0});
  ASSERT_TRUE(r.feasible);
  EXPECT_NEAR(r.objective, 12.0, 1e-12);
  EXPECT_NEAR(r.x[0], 4.0, 1e-12);
}

TEST(Simplex, DetectsInfeasible) {
  const LpResult r = simplex_max({{1, 1}, {1, 1}}, {1, 2}, {1, 0});
  EXPECT_FALSE(r.feasible);
  EXPECT_GT(r.infeasibility, 0.0);
}

TEST(Simplex, NegativeRightHandSide) {
  // x - y = -1, x + y = 3: x = 1, y = 2.
  const LpResult r = simplex_max({{1, -1}, {1, 1}}, {-1, 3}, {0, 1});
  ASSERT_TRUE(r.feasible);
  EXPECT_NEAR(r.x[0], 1.0, 1e-12);
  EXPECT_NEAR(r.x[1], 2.0, 1e-12);
}

TEST(Simplex, RedundantRows) {
  const LpResult r = simplex_max({{1, 1, 1}, {2, 2, 2}}, {1, 2}, {0.1, 0.5, 0.2});
  ASSERT_TRUE(r.feasible);
  EXPECT_NEAR(r.objective, 0.5, 1e-12);
}

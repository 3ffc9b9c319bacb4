#include <gtest/gtest.h>

#include <cmath>

#include "error.hpp"
#include "fkn_weights.hpp"
#include "stability_bounds.hpp"

using namespace phistab;

namespace {

double cube(double t) { return t * t * t; }

// Re-checks the Gamma-bar constraint set at a reported point.
void expect_gamma_bar_point(const BoundResult& r, double a, double rho) {
  const double z1 = r.argmax.z1;
  const double z2 = r.argmax.z2;
  EXPECT_GE(z2 - z1, 0.5 - 1e-9);
  EXPECT_GE(a + rho * z1, -1e-9);
  EXPECT_LE(a + rho * z2, 1.0 + 1e-9);
  EXPECT_GE(r.argmax.p, -1e-9);
  EXPECT_LE(r.argmax.p, 1.0 - a + 1e-9);
  EXPECT_GE(r.argmax.q, -1e-9);
  EXPECT_LE(r.argmax.q, a + 1e-9);
  // The four atoms of a + rho Z at 0, a + rho z1, a + rho z2 and 1 have E[Z] = 0.
  const double p = r.argmax.p;
  const double q = r.argmax.q;
  EXPECT_NEAR((1 - a - p) * (-a / rho) + p * z1 + q * z2 + (a - q) * (1 - a) / rho, 0.0, 1e-9);
}

WeightFunction omega_min_fn() { return WeightBoundSpec{WeightBoundKind::pointwise_min, 0.25}; }

}  // namespace

TEST(GammaBar, CertifiesDictatorBelowRhoStar) {
  const PhiSpec s1(1.0, true);
  const BoundResult r = gamma_bar(0.5, 0.4, s1);
  ASSERT_TRUE(r.feasible);
  EXPECT_NEAR(r.value, dictator_stability(s1, 0.4), 1e-9);
  EXPECT_NEAR(r.value, -0.610864, 1e-6);
  EXPECT_NEAR(r.argmax.z1, -0.5, 1e-6);
  EXPECT_NEAR(r.argmax.z2, 0.5, 1e-6);
  expect_gamma_bar_point(r, 0.5, 0.4);
}

TEST(GammaBar, CertifiesDictatorForAlphaFive) {
  const PhiSpec s5(5.0, true);
  for (double rho : {0.3, 0.7, 0.9}) {
    const BoundResult r = gamma_bar(0.5, rho, s5);
    EXPECT_NEAR(r.value, dictator_stability(s5, rho), 1e-9) << rho;
  }
}

TEST(GammaBar, StopsCertifyingAboveRhoStar) {
  const PhiSpec s1(1.0, true);
  const BoundResult r = gamma_bar(0.5, 0.6, s1);
  EXPECT_GT(r.value - dictator_stability(s1, 0.6), 1e-4);
}

TEST(GammaBar, UnbalancedPointsAreFeasible) {
  const PhiSpec s15(1.5, true);
  for (double a : {0.1, 0.25, 0.4}) {
    for (double rho : {0.2, 0.5, 0.8}) {
      const BoundResult r = gamma_bar(a, rho, s15);
      ASSERT_TRUE(r.feasible) << a << " " << rho;
      expect_gamma_bar_point(r, a, rho);
      EXPECT_NEAR(gamma_bar_objective(a, rho, s15, r.argmax.z1, r.argmax.z2), r.value, 1e-12);
      // The point Z = S of a mean-a subcube indicator lies in the feasible set.
      EXPECT_GE(r.value, (1 - a) * s15.phi(a - rho * a) + a * s15.phi(a + rho * (1 - a)) - 1e-12);
    }
  }
}

TEST(GammaBar, RejectsBadInput) {
  EXPECT_THROW(gamma_bar(0.5, 0.4, PhiSpec(1.0, false)), Error);
  EXPECT_THROW(gamma_bar(0.6, 0.4, PhiSpec(1.0, true)), Error);
  EXPECT_THROW(gamma_bar(0.5, 1.0, PhiSpec(1.0, true)), Error);
}

TEST(CombinedBound, BalancedClosedForm) {
  for (double alpha : {2.5, 2.2, 2.9}) {
    const PhiSpec spec(alpha, true);
    for (double rho = 0.1; rho < 0.95; rho += 0.1) {
      const BoundResult r = lambda_statement2(0.5, rho, spec);
      EXPECT_NEAR(r.value, spec.phi((1 - rho) / 2), 1e-9) << alpha << " " << rho;
    }
  }
  const BoundResult h = gamma_hat(0.5, 0.5, PhiSpec(2.5, true));
  EXPECT_NEAR(h.argmax.z_tilde, -0.5, 1e-12);
}

TEST(CombinedBound, EmptyIntervalFallsBack) {
  const PhiSpec spec(2.5, true);
  const double a = 0.2;
  const double rho = 0.5;
  const BoundResult r = lambda_statement2(a, rho, spec);
  ASSERT_TRUE(r.feasible);
  const double two_point = (1 - a) * spec.phi(a - rho * a) + a * spec.phi(a + rho * (1 - a));
  EXPECT_GE(r.value, two_point - 1e-15);
}

TEST(GammaTilde, CubeReflection) {
  const PhiSpec p3(3.0, false, PhiFamily::power);
  for (double rho = 0.1; rho < 0.95; rho += 0.1) {
    const BoundResult r = gamma_tilde(0.5, rho, p3, TildeMode::reflected);
    EXPECT_NEAR(r.value, 0.5 * cube((1 + rho) / 2) + 0.5 * cube((1 - rho) / 2), 1e-8) << rho;
  }
  EXPECT_NEAR(gamma_tilde(0.5, 0.5, p3, TildeMode::automatic).value, 0.21875, 1e-8);
}

TEST(GammaTilde, ThreeHalvesBelowThreshold) {
  const PhiSpec p15(1.5, false, PhiFamily::power);
  const BoundResult r = gamma_tilde(0.5, 0.2, p15, TildeMode::direct);
  EXPECT_NEAR(r.value, 0.5 * std::pow(0.6, 1.5) + 0.5 * std::pow(0.4, 1.5), 1e-8);
  EXPECT_NEAR(gamma_tilde(0.5, 0.5, p15).value, dictator_stability(p15, 0.5), 1e-6);
}

TEST(GammaTilde, ZeroPerturbation) {
  // The search includes z2 = 0, where Z = 0 and the objective is Phi(a).
  const PhiSpec p15(1.5, false, PhiFamily::power);
  for (double a : {0.2, 0.5, 0.7}) EXPECT_GE(gamma_tilde(a, 0.3, p15, TildeMode::direct).value, p15.phi(a) - 1e-12);
}

TEST(Upsilon, DictatorAtPointEight) {
  const PhiSpec s1(1.0, true);
  const BoundResult r = upsilon_bar(0.8, s1, omega_min_fn());
  EXPECT_NEAR(r.value, dictator_stability(s1, 0.8), 1e-6);
}

TEST(Upsilon, AboveDictatorAtPointNine) {
  const PhiSpec s1(1.0, true);
  const BoundResult r = upsilon_bar(0.9, s1, omega_min_fn());
  EXPECT_GT(r.value, dictator_stability(s1, 0.9) + 1e-4);
}

TEST(Upsilon, NeverWorseThanGammaBar) {
  const PhiSpec s1(1.0, true);
  const SearchOptions coarse{120, 1e-10, 1};
  for (double rho = 0.1; rho < 0.95; rho += 0.1) {
    const double ups = upsilon_bar(rho, s1, omega_min_fn(), coarse).value;
    const double gb = gamma_bar(0.5, rho, s1).value;
    EXPECT_LE(ups, gb + 1e-9) << rho;
  }
}

TEST(Upsilon, DictatorPointFeasibleAtBetaHalf) {
  const PhiSpec s1(1.0, true);
  const WeightFunction omega = omega_min_fn();
  EXPECT_DOUBLE_EQ(omega(0.5), 0.25);
  for (double rho : {0.3, 0.6, 0.9}) {
    EXPECT_NEAR(upsilon_objective(rho, s1, 0.5, omega(0.5), -0.5, 0.5), dictator_stability(s1, rho), 1e-12);
  }
}

TEST(LambdaGeneric, FeasibleAndAboveDictator) {
  const PhiSpec s2(2.0, true);
  MultistartOptions options;
  options.seed = 5;
  const BoundResult r = lambda_generic(0.5, 0.5, s2, options);
  ASSERT_TRUE(r.feasible);
  EXPECT_GE(r.value, -0.375 - 1e-9);
  ASSERT_TRUE(r.distribution.has_value());
  EXPECT_LE(r.distribution->residual(), 1e-9);
  EXPECT_NEAR(r.distribution->objective(s2, 0.5), r.value, 1e-12);
  double mass = 0.0;
  for (const SZAtom& atom : r.distribution->atoms) mass += atom.probability;
  EXPECT_NEAR(mass, 1.0, 1e-12);
}

TEST(LambdaGeneric, DeterministicForSeed) {
  const PhiSpec s15(1.5, true);
  MultistartOptions options;
  options.seed = 42;
  options.starts = 16;
  const BoundResult a = lambda_generic(0.3, 0.6, s15, options);
  const BoundResult b = lambda_generic(0.3, 0.6, s15, options);
  EXPECT_EQ(a.value, b.value);
  options.workers = 3;
  EXPECT_EQ(lambda_generic(0.3, 0.6, s15, options).value, a.value);
}

TEST(LambdaGeneric, SmallRhoLimit) {
  MultistartOptions options;
  options.seed = 1;
  options.starts = 16;
  for (const PhiSpec& spec : {PhiSpec(1.0, true), PhiSpec(3.0, true), PhiSpec(1.5, false, PhiFamily::power)}) {
    EXPECT_NEAR(lambda_generic(0.5, 1e-3, spec, options).value, spec.phi(0.5), 1e-4) << spec.describe();
  }
}

TEST(LambdaGeneric, AgreesWithClosedForms) {
  MultistartOptions options;
  options.seed = 7;
  options.starts = 24;
  for (double rho : {0.3, 0.7}) {
    for (double a : {0.25, 0.5}) {
      const PhiSpec s1(1.0, true);
      EXPECT_NEAR(lambda_generic(a, rho, s1, options).value, gamma_bar(a, rho, s1).value, 1e-5) << a << " " << rho;
      const PhiSpec s25(2.5, true);
      EXPECT_NEAR(lambda_generic(a, rho, s25, options).value, lambda_statement2(a, rho, s25).value, 1e-5)
          << a << " " << rho;
      const PhiSpec p3(3.0, false, PhiFamily::power);
      EXPECT_NEAR(lambda_generic(a, rho, p3, options).value, gamma_tilde(a, rho, p3).value, 1e-5) << a << " " << rho;
    }
  }
  EXPECT_NEAR(lambda_generic(0.5, 0.4, PhiSpec(1.0, true), options).value, -0.610864, 1e-6);
}

TEST(LambdaGeneric, ValidatesSupport) {
  MultistartOptions options;
  options.support = 2;
  EXPECT_THROW(lambda_generic(0.5, 0.5, PhiSpec(1.0, true), options), Error);
  options.support = 7;
  EXPECT_THROW(lambda_generic(0.5, 0.5, PhiSpec(1.0, true), options), Error);
}

TEST(Regime, Violations) {
  EXPECT_FALSE(regime_violation(BoundKind::gamma_bar, PhiSpec(1.0, true)).has_value());
  EXPECT_TRUE(regime_violation(BoundKind::gamma_bar, PhiSpec(2.5, true)).has_value());
  EXPECT_TRUE(regime_violation(BoundKind::gamma_bar, PhiSpec(1.0, false)).has_value());
  EXPECT_FALSE(regime_violation(BoundKind::lambda2, PhiSpec(2.5, true)).has_value());
  EXPECT_TRUE(regime_violation(BoundKind::lambda2, PhiSpec(4.0, true)).has_value());
  EXPECT_FALSE(regime_violation(BoundKind::gamma_tilde, PhiSpec(3.0, false, PhiFamily::power)).has_value());
  EXPECT_TRUE(regime_violation(BoundKind::gamma_tilde, PhiSpec(2.0, false, PhiFamily::power)).has_value());
  EXPECT_FALSE(regime_violation(BoundKind::lambda_generic, PhiSpec(2.0, false)).has_value());
  EXPECT_EQ(parse_bound_kind("gamma-bar"), BoundKind::gamma_bar);
  EXPECT_FALSE(parse_bound_kind("gamma").has_value());
}

TEST(AsymAux, Examples) {
  for (double rho : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(asym_aux(0.5, rho).T, rho / 2, 1e-14);
    for (double alpha : {1.2, 1.5, 3.0}) {
      EXPECT_NEAR(asym_h(alpha, 0.5, rho),
                  0.5 * std::pow((1 - rho) / 2, alpha) + 0.5 * std::pow((1 + rho) / 2, alpha), 1e-14);
    }
    const double lo = asym_p_min(rho);
    for (int i = 0; i <= 20; ++i) {
      const double p = lo + (0.5 - lo) * i / 20.0;
      EXPECT_NEAR(asym_varphi(1.0, p, rho), 0.0, 1e-12);
      EXPECT_NEAR(asym_h(1.0, p, rho), asym_h(1.0, 0.5, rho), 1e-9);
    }
  }
  EXPECT_LT(asym_aux(0.49, 0.9).F, 0.0);
  EXPECT_THROW(asym_aux(0.6, 0.5), Error);
  EXPECT_THROW(asym_aux(asym_p_min(0.5) - 0.01, 0.5), Error);
}

TEST(LemmaChecks, PointFiveGrid) {
  std::vector<double> p_grid;
  for (int i = 0; i < 50; ++i) p_grid.push_back(0.41 + (0.5 - 0.41) * i / 49.0);
  const LemmaCheckReport r = lemma_grid_checks({0.5}, p_grid, {1.2, 1.5, 1.8});
  EXPECT_TRUE(r.violations.empty());
  EXPECT_GT(r.points, 0u);
}

TEST(LemmaChecks, DerivativeMatchesFiniteDifference) {
  for (double alpha : {1.2, 1.8, 2.5}) {
    for (double rho : {0.3, 0.7}) {
      const double lo = asym_p_min(rho);
      for (int i = 1; i < 10; ++i) {
        const double p = lo + (0.5 - lo) * i / 10.0;
        const double h = 1e-6;
        const double fd = (asym_h(alpha, p + h, rho) - asym_h(alpha, p - h, rho)) / (2 * h);
        EXPECT_NEAR(asym_h_derivative(alpha, p, rho), fd, 1e-5 * (1 + std::abs(fd)));
      }
    }
  }
}

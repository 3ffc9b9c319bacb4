#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "phi_functionals.hpp"

namespace phistab {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum class BoundKind { gamma_bar, gamma_hat, lambda2, gamma_tilde, upsilon, lambda_generic };

struct BoundParams {
  double beta = kNaN;
  double z1 = kNaN;
  double z2 = kNaN;
  double z_tilde = kNaN;
  double z_hat = kNaN;
  double p = kNaN;
  double q = kNaN;
};

struct BoundDiagnostics {
  unsigned grid = 0;
  unsigned refine_iters = 0;
  double residual = kNaN;
  std::vector<std::string> notes;
};

struct SZAtom {
  double s;
  double z;
  double probability;
};

// Joint law of (S, Z) with P(S = -a) = 1 - a and P(S = 1 - a) = a.
struct SZDistribution {
  double a = 0.5;
  std::vector<SZAtom> atoms;

  // Largest violation of: probabilities >= 0, marginals of S, E[Z] = 0,
  // E[Z^2] <= E[SZ]. Zero-probability atoms are allowed.
  double residual() const;
  double objective(const PhiSpec& spec, double rho) const;
};

struct BoundResult {
  BoundKind kind = BoundKind::gamma_bar;
  double value = kNaN;
  BoundParams argmax;
  bool feasible = false;
  BoundDiagnostics diagnostics;
  std::optional<SZDistribution> distribution;
};

struct SearchOptions {
  unsigned grid = 400;
  double tolerance = 1e-10;
  unsigned workers = 1;
};

enum class TildeMode { automatic, direct, reflected };

struct MultistartOptions {
  unsigned support = 3;
  unsigned starts = 64;
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
  unsigned workers = 1;
};

using WeightFunction = std::function<double(double)>;

BoundResult gamma_bar(double a, double rho, const PhiSpec& spec, const SearchOptions& options = {});
BoundResult gamma_hat(double a, double rho, const PhiSpec& spec, const SearchOptions& options = {});
BoundResult lambda_statement2(double a, double rho, const PhiSpec& spec, const SearchOptions& options = {});
BoundResult gamma_tilde(double a, double rho, const PhiSpec& spec, TildeMode mode = TildeMode::automatic,
                        const SearchOptions& options = {});
BoundResult upsilon_bar(double rho, const PhiSpec& spec, const WeightFunction& omega,
                        const SearchOptions& options = {});
BoundResult lambda_generic(double a, double rho, const PhiSpec& spec, const MultistartOptions& options = {});

// Objective of the Gamma-bar program at one point; -inf when infeasible.
double gamma_bar_objective(double a, double rho, const PhiSpec& spec, double z1, double z2);
// Objective of the Upsilon-bar program at (beta, z1, z2); -inf when infeasible.
double upsilon_objective(double rho, const PhiSpec& spec, double beta, double omega, double z1, double z2);

// Empty when `spec` satisfies the shape assumption the bound relies on.
std::optional<std::string> regime_violation(BoundKind kind, const PhiSpec& spec);

const char* to_string(BoundKind kind) noexcept;
std::optional<BoundKind> parse_bound_kind(const std::string& name);

// Auxiliary functions of the asymmetric power-family analysis, valid for
// (1 - rho)/(2 - 2 rho + rho^2) <= p <= 1/2.
struct AsymAux {
  double T, A, B, C, D, E, F;
};

double asym_p_min(double rho);
AsymAux asym_aux(double p, double rho);
double asym_h(double alpha, double p, double rho);
double asym_varphi(double alpha, double p, double rho);
double asym_h_derivative(double alpha, double p, double rho);

struct LemmaViolation {
  std::string check;
  double rho;
  double p;
  double alpha;
  double value;
};

struct LemmaCheckReport {
  std::size_t points = 0;
  std::vector<LemmaViolation> violations;
  double max_derivative_error = 0.0;
  double max_phi1_abs = 0.0;
  std::string method;
};

// Samples `p_points` interior points of the p-domain for each rho.
LemmaCheckReport lemma_grid_checks(const std::vector<double>& rho_grid, std::size_t p_points,
                                   const std::vector<double>& alpha_grid);
LemmaCheckReport lemma_grid_checks(const std::vector<double>& rho_grid, const std::vector<double>& p_grid,
                                   const std::vector<double>& alpha_grid);

}  // namespace phistab

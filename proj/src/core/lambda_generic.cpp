#include <algorithm>
#include <cmath>
#include <random>

#include "bound_common.hpp"
#include "optimize.hpp"
#include "parallel.hpp"
#include "simplex_lp.hpp"

namespace phistab {

namespace {

// Feasible values lie in [min Phi, max Phi] within [-1, 1]; this keeps every
// infeasible point strictly below them while still guiding the search.
constexpr double kPenaltyBase = -10.0;
constexpr double kRestartStep = 0.1;
constexpr unsigned kMaxRestarts = 12;

struct InnerSolution {
  bool feasible = false;
  double value = kInfeasible;
  std::vector<double> p;
};

// Atoms 0..m-1 carry s = -a and atoms m..2m-1 carry s = 1-a. For fixed z the
// program is linear in p, so it is solved exactly.
InnerSolution solve_inner(double a, double rho, const PhiSpec& spec, const std::vector<double>& z, unsigned m) {
  const std::size_t atoms = 2 * static_cast<std::size_t>(m);
  std::vector<std::vector<double>> A(4, std::vector<double>(atoms + 1, 0.0));
  std::vector<double> c(atoms + 1, 0.0);
  for (std::size_t i = 0; i < atoms; ++i) {
    const double s = i < m ? -a : 1.0 - a;
    A[i < m ? 0 : 1][i] = 1.0;
    A[2][i] = z[i];
    A[3][i] = z[i] * z[i] - s * z[i];
    c[i] = spec(std::clamp(a + rho * z[i], 0.0, 1.0));
  }
  A[3][atoms] = 1.0;  // slack of E[Z^2] - E[SZ] <= 0
  const std::vector<double> b = {1.0 - a, a, 0.0, 0.0};
  const LpResult lp = simplex_max(A, b, c);
  InnerSolution out;
  if (!lp.feasible) {
    out.value = kPenaltyBase - lp.infeasibility;
    return out;
  }
  out.feasible = true;
  out.value = lp.objective;
  out.p.assign(lp.x.begin(), lp.x.begin() + static_cast<std::ptrdiff_t>(atoms));
  return out;
}

struct StartOutcome {
  bool feasible = false;
  double value = kInfeasible;
  std::vector<double> z;
  unsigned iterations = 0;
};

}  // namespace

BoundResult lambda_generic(double a, double rho, const PhiSpec& spec, const MultistartOptions& options) {
  detail::check_open_unit(a, "a");
  detail::check_open_unit(rho, "rho");
  require(options.support >= 3 && options.support <= 6, ErrorCode::invalid_argument,
          "support size m must lie in [3, 6]");
  require(options.starts >= 1, ErrorCode::invalid_argument, "at least one start is required");

  const unsigned m = options.support;
  const std::size_t dim = 2 * static_cast<std::size_t>(m);
  const double lo = -a / rho;
  const double hi = (1.0 - a) / rho;
  const std::vector<double> lower(dim, lo);
  const std::vector<double> upper(dim, hi);

  auto objective = [&](const std::vector<double>& z) { return solve_inner(a, rho, spec, z, m).value; };

  std::vector<StartOutcome> outcomes(options.starts);
  parallel_for(options.starts, options.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      std::vector<double> z(dim);
      if (k == 0) {
        // Z = S: always feasible, and the dictator-induced law at a = 1/2.
        for (std::size_t i = 0; i < dim; ++i) z[i] = i < m ? -a : 1.0 - a;
      } else {
        std::seed_seq seq{static_cast<std::uint64_t>(options.seed), static_cast<std::uint64_t>(k)};
        std::mt19937_64 rng(seq);
        // Optimal laws tend to put atoms at the ends of the range, which a
        // uniform draw never hits; each coordinate starts there with
        // probability 1/4 per end.
        std::uniform_real_distribution<double> unit(lo, hi);
        std::uniform_int_distribution<int> pick(0, 3);
        for (double& v : z) {
          const int choice = pick(rng);
          v = choice == 0 ? lo : choice == 1 ? hi : unit(rng);
        }
      }
      StartOutcome& out = outcomes[k];
      // Nelder-Mead stalls on this objective; restart with a full-size
      // simplex from the incumbent until a restart no longer helps.
      const std::vector<double> step(dim, kRestartStep * (hi - lo));
      double value = kInfeasible;
      for (unsigned round = 0; round < kMaxRestarts; ++round) {
        const OptimumND opt = nelder_mead_max(objective, z, step, lower, upper, options.tolerance, 20000);
        out.iterations += opt.iterations;
        z = opt.x;
        const bool improved = opt.value > value + 1e-13;
        value = opt.value;
        if (!improved) break;
      }
      const InnerSolution inner = solve_inner(a, rho, spec, z, m);
      out.feasible = inner.feasible;
      out.value = inner.value;
      out.z = z;
    }
  });

  std::size_t best = outcomes.size();
  std::size_t feasible_count = 0;
  unsigned iterations = 0;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    iterations += outcomes[k].iterations;
    if (!outcomes[k].feasible) continue;
    ++feasible_count;
    if (best == outcomes.size() || outcomes[k].value > outcomes[best].value) best = k;
  }
  require(best < outcomes.size(), ErrorCode::infeasible,
          "lambda_generic: all " + std::to_string(options.starts) + " starts ended infeasible");

  const InnerSolution inner = solve_inner(a, rho, spec, outcomes[best].z, m);
  BoundResult result;
  result.kind = BoundKind::lambda_generic;
  result.value = inner.value;
  result.feasible = true;
  result.diagnostics.grid = 0;
  result.diagnostics.refine_iters = iterations;
  result.diagnostics.notes.push_back(detail::regime_note(BoundKind::lambda_generic, spec));
  result.diagnostics.notes.push_back("multistart: " + std::to_string(options.starts) + " starts, " +
                                     std::to_string(feasible_count) + " feasible, best start " +
                                     std::to_string(best) + ", seed " + std::to_string(options.seed));
  SZDistribution dist{a, {}};
  for (std::size_t i = 0; i < dim; ++i) {
    if (inner.p[i] <= 0.0) continue;
    dist.atoms.push_back({i < m ? -a : 1.0 - a, outcomes[best].z[i], inner.p[i]});
  }
  std::sort(dist.atoms.begin(), dist.atoms.end(), [](const SZAtom& l, const SZAtom& r) {
    return l.s != r.s ? l.s < r.s : l.z < r.z;
  });
  result.diagnostics.residual = dist.residual();
  result.distribution = std::move(dist);
  return result;
}

}  // namespace phistab

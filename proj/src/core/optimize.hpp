#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace phistab {

inline constexpr double kInfeasible = -std::numeric_limits<double>::infinity();

using Objective1D = std::function<double(double)>;
using ObjectiveND = std::function<double(const std::vector<double>&)>;

struct Optimum1D {
  double x = 0.0;
  double value = kInfeasible;
  unsigned iterations = 0;
};

struct OptimumND {
  std::vector<double> x;
  double value = kInfeasible;
  unsigned iterations = 0;
};

// Uniform grid point i of `points` on [lo, hi], with both endpoints exact.
inline double grid_point(double lo, double hi, std::size_t i, std::size_t points) {
  if (points <= 1) return lo;
  if (i + 1 == points) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
}

// Index of the maximum; the first index wins ties. Returns `values.size()`
// when every entry is infeasible.
std::size_t argmax_first(const std::vector<double>& values);

std::vector<double> evaluate_grid(const Objective1D& f, double lo, double hi, std::size_t points, unsigned workers);

Optimum1D golden_section_max(const Objective1D& f, double lo, double hi, double tol, unsigned max_iter = 200);

// Grid scan followed by golden-section refinement in the cells adjacent to
// the best grid point. The refined point replaces the grid point only if it
// is strictly better.
Optimum1D grid_refine_max(const Objective1D& f, double lo, double hi, std::size_t points, double tol,
                          unsigned workers);

// Nelder-Mead on a box; vertices are clamped into [lower, upper].
OptimumND nelder_mead_max(const ObjectiveND& f, std::vector<double> x0, const std::vector<double>& step,
                          const std::vector<double>& lower, const std::vector<double>& upper, double tol,
                          unsigned max_iter = 4000);

// Nelder-Mead restarted from the incumbent with the initial step scaled by
// 1, 1/10 and 1/100 in turn, until a whole cycle of restarts brings no
// improvement or `max_restarts` runs are spent.
OptimumND nelder_mead_restarts(const ObjectiveND& f, std::vector<double> x0, const std::vector<double>& step,
                               const std::vector<double>& lower, const std::vector<double>& upper, double tol,
                               unsigned max_restarts = 12, unsigned max_iter = 4000);

}  // namespace phistab

#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "parallel.hpp"

namespace phistab {

std::size_t argmax_first(const std::vector<double>& values) {
  std::size_t best = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i]) || values[i] == kInfeasible) continue;
    if (best == values.size() || values[i] > values[best]) best = i;
  }
  return best;
}

std::vector<double> evaluate_grid(const Objective1D& f, double lo, double hi, std::size_t points, unsigned workers) {
  std::vector<double> values(points);
  parallel_for(points, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) values[i] = f(grid_point(lo, hi, i, points));
  });
  return values;
}

Optimum1D golden_section_max(const Objective1D& f, double lo, double hi, double tol, unsigned max_iter) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  unsigned it = 0;
  while (b - a > tol && it < max_iter) {
    ++it;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  Optimum1D out;
  out.iterations = it;
  const double candidates[] = {a, c, d, b};
  for (double x : candidates) {
    const double v = (x == c) ? fc : (x == d) ? fd : f(x);
    if (!std::isnan(v) && v > out.value) {
      out.value = v;
      out.x = x;
    }
  }
  return out;
}

Optimum1D grid_refine_max(const Objective1D& f, double lo, double hi, std::size_t points, double tol,
                          unsigned workers) {
  const std::vector<double> values = evaluate_grid(f, lo, hi, points, workers);
  const std::size_t best = argmax_first(values);
  Optimum1D out;
  if (best == values.size()) return out;
  out.x = grid_point(lo, hi, best, points);
  out.value = values[best];
  const double left = grid_point(lo, hi, best == 0 ? 0 : best - 1, points);
  const double right = grid_point(lo, hi, std::min(best + 1, points - 1), points);
  if (right > left) {
    const Optimum1D refined = golden_section_max(f, left, right, tol);
    out.iterations = refined.iterations;
    if (refined.value > out.value) {
      out.x = refined.x;
      out.value = refined.value;
    }
  }
  return out;
}

OptimumND nelder_mead_max(const ObjectiveND& f, std::vector<double> x0, const std::vector<double>& step,
                          const std::vector<double>& lower, const std::vector<double>& upper, double tol,
                          unsigned max_iter) {
  const std::size_t dim = x0.size();
  auto clamp = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < dim; ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
  };
  // Minimise the negated objective; NaN counts as infeasible.
  auto cost = [&](const std::vector<double>& x) {
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : -v;
  };

  clamp(x0);
  std::vector<std::vector<double>> simplex(dim + 1, x0);
  for (std::size_t i = 0; i < dim; ++i) {
    simplex[i + 1][i] += step[i];
    if (simplex[i + 1][i] > upper[i]) simplex[i + 1][i] = x0[i] - step[i];
    clamp(simplex[i + 1]);
  }
  std::vector<double> costs(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) costs[i] = cost(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  unsigned it = 0;
  for (; it < max_iter; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return costs[l] < costs[r]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[dim - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) diameter = std::max(diameter, std::abs(simplex[i][k] - simplex[best][k]));
    }
    if (diameter <= tol) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k] / static_cast<double>(dim);
    }
    auto along = [&](double t) {
      std::vector<double> x(dim);
      for (std::size_t k = 0; k < dim; ++k) x[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
      clamp(x);
      return x;
    };

    std::vector<double> xr = along(-1.0);
    const double cr = cost(xr);
    if (cr < costs[best]) {
      std::vector<double> xe = along(-2.0);
      const double ce = cost(xe);
      if (ce < cr) {
        simplex[worst] = std::move(xe);
        costs[worst] = ce;
      } else {
        simplex[worst] = std::move(xr);
        costs[worst] = cr;
      }
      continue;
    }
    if (cr < costs[second]) {
      simplex[worst] = std::move(xr);
      costs[worst] = cr;
      continue;
    }
    std::vector<double> xc = cr < costs[worst] ? along(-0.5) : along(0.5);
    const double cc = cost(xc);
    if (cc < std::min(cr, costs[worst])) {
      simplex[worst] = std::move(xc);
      costs[worst] = cc;
      continue;
    }
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < dim; ++k) simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
      costs[i] = cost(simplex[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= dim; ++i) {
    if (costs[i] < costs[best]) best = i;
  }
  OptimumND out;
  out.x = simplex[best];
  out.value = -costs[best];
  out.iterations = it;
  return out;
}

OptimumND nelder_mead_restarts(const ObjectiveND& f, std::vector<double> x0, const std::vector<double>& step,
                               const std::vector<double>& lower, const std::vector<double>& upper, double tol,
                               unsigned max_restarts, unsigned max_iter) {
  constexpr double kScales[] = {1.0, 0.1, 0.01};
  constexpr unsigned kCycle = 3;
  OptimumND best;
  best.x = std::move(x0);
  unsigned stale = 0;
  for (unsigned run = 0; run < max_restarts && stale < kCycle; ++run) {
    std::vector<double> scaled(step);
    for (double& s : scaled) s *= kScales[run % kCycle];
    OptimumND opt = nelder_mead_max(f, best.x, scaled, lower, upper, tol, max_iter);
    best.iterations += opt.iterations;
    if (run == 0 || opt.value > best.value) {
      stale = run == 0 || opt.value > best.value + 1e-14 ? 0 : stale + 1;
      best.x = std::move(opt.x);
      best.value = opt.value;
    } else {
      ++stale;
    }
  }
  return best;
}

}  // namespace phistab

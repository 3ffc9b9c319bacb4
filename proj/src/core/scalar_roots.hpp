#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace phistab {

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  unsigned iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

// Bisection until the bracket is narrower than `tol` and |f| <= residual_tol.
RootResult bisect(const std::function<double(double)>& f, double lo, double hi, double tol,
                  double residual_tol = 1e-10, unsigned max_iter = 200);

double psi(double rho);
RootResult rho_star(double tol = 1e-12);

double theta_residual(double theta, double alpha);
RootResult theta(double alpha, double tol = 1e-12);

double region_threshold(double alpha);

struct RegionPoint {
  double alpha;
  double rho_threshold;
};
std::vector<RegionPoint> region_curve(double alpha_lo, double alpha_hi, std::size_t steps, unsigned workers = 1);

}  // namespace phistab

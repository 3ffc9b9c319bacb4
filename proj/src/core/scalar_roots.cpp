#include "scalar_roots.hpp"

#include <cmath>
#include <string>

#include "error.hpp"
#include "optimize.hpp"
#include "parallel.hpp"

namespace phistab {

namespace {

void check_tol(double tol) {
  require(std::isfinite(tol) && tol >= 1e-14, ErrorCode::invalid_argument, "tolerance must be at least 1e-14");
}

void check_theta_alpha(double alpha) {
  require(std::isfinite(alpha) && alpha > 1.0 && alpha < 2.0, ErrorCode::domain,
          "theta requires alpha strictly inside (1, 2)");
}

}  // namespace

RootResult bisect(const std::function<double(double)>& f, double lo, double hi, double tol, double residual_tol,
                  unsigned max_iter) {
  double flo = f(lo);
  const double fhi = f(hi);
  require(std::isfinite(flo) && std::isfinite(fhi) && ((flo <= 0.0 && fhi >= 0.0) || (flo >= 0.0 && fhi <= 0.0)),
          ErrorCode::not_found, "bisection bracket does not change sign");
  RootResult out;
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  double a = lo;
  double b = hi;
  double mid = 0.5 * (a + b);
  double fmid = f(mid);
  unsigned it = 0;
  while (it < max_iter) {
    ++it;
    if (fmid == 0.0) break;
    if ((fmid < 0.0) == (flo < 0.0)) {
      a = mid;
      flo = fmid;
    } else {
      b = mid;
    }
    const double next = 0.5 * (a + b);
    if (next == a || next == b) break;
    mid = next;
    fmid = f(mid);
    if (b - a <= tol && std::abs(fmid) <= residual_tol) break;
  }
  out.root = mid;
  out.residual = fmid;
  out.iterations = it;
  return out;
}

double psi(double rho) {
  require(std::isfinite(rho) && rho >= 0.0 && rho <= 1.0, ErrorCode::domain, "psi requires rho in [0, 1]");
  if (rho == 1.0) return 0.0;
  const double minus = 1.0 - rho;
  return (1.0 + rho * rho) * std::log(0.5 * (1.0 + rho)) - minus * minus * std::log(0.5 * minus);
}

RootResult rho_star(double tol) {
  check_tol(tol);
  return bisect(psi, 0.3, 0.6, tol);
}

double theta_residual(double theta, double alpha) {
  return std::pow(theta, 2.0 - alpha) + (1.0 - theta) / alpha - 1.0;
}

namespace {

// Residual in u = ln(theta); keeps roots far below 1e-12 (alpha near 2) representable.
double log_theta_residual(double u, double alpha) {
  return std::exp((2.0 - alpha) * u) - std::expm1(u) / alpha - 1.0;
}

}  // namespace

RootResult theta(double alpha, double tol) {
  check_theta_alpha(alpha);
  check_tol(tol);
  // theta = 1 is always a root. The residual increases on (0, theta_c) and
  // decreases after it, so the nontrivial root lies below theta_c.
  const double u_hi = std::log(alpha * (2.0 - alpha)) / (alpha - 1.0);
  // Below this point theta^(2-alpha) < 1 - 1/alpha, so the residual is negative.
  const double u_lo = std::min(std::log(1e-12), std::log1p(-1.0 / alpha) / (2.0 - alpha) - 10.0);
  constexpr int kSamples = 64;
  double previous = log_theta_residual(u_lo, alpha);
  for (int i = 1; i <= kSamples; ++i) {
    const double u = grid_point(u_lo, u_hi, static_cast<std::size_t>(i), kSamples + 1);
    const double v = log_theta_residual(u, alpha);
    require(v >= previous - 1e-15, ErrorCode::internal,
            "theta residual is not monotone on its bracket for alpha=" + std::to_string(alpha));
    previous = v;
  }
  const double u_tol = std::min(tol, 1e-14);
  RootResult r = bisect([alpha](double u) { return log_theta_residual(u, alpha); }, u_lo, u_hi, u_tol);
  const double root = std::exp(r.root);
  RootResult out;
  out.root = root;
  out.residual = log_theta_residual(r.root, alpha);
  out.iterations = r.iterations;
  out.bracket_lo = std::exp(u_lo);
  out.bracket_hi = std::exp(u_hi);
  return out;
}

double region_threshold(double alpha) {
  const double t = theta(alpha).root;
  return (1.0 - t) / (1.0 + t);
}

std::vector<RegionPoint> region_curve(double alpha_lo, double alpha_hi, std::size_t steps, unsigned workers) {
  check_theta_alpha(alpha_lo);
  check_theta_alpha(alpha_hi);
  require(alpha_lo <= alpha_hi, ErrorCode::invalid_argument, "alpha_lo must not exceed alpha_hi");
  require(steps >= 1, ErrorCode::invalid_argument, "region curve needs at least one step");
  std::vector<RegionPoint> out(steps);
  parallel_for(steps, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double alpha = grid_point(alpha_lo, alpha_hi, i, steps);
      out[i] = {alpha, region_threshold(alpha)};
    }
  });
  return out;
}

}  // namespace phistab

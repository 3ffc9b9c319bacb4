#include <algorithm>
#include <cmath>

#include "bound_common.hpp"

namespace phistab {

namespace {

void check_asym_domain(double p, double rho) {
  detail::check_open_unit(rho, "rho");
  const double lo = asym_p_min(rho);
  require(std::isfinite(p) && p >= lo - 1e-15 && p <= 0.5 + 1e-15, ErrorCode::domain,
          "p must lie in [(1-rho)/(2-2rho+rho^2), 1/2]");
}

double t_of(double p, double rho) {
  const double radicand = p * (p * (2.0 - 2.0 * rho + rho * rho) + rho - 1.0);
  return std::sqrt(std::max(radicand, 0.0));
}

// Ratios X and Y with h_alpha(p) = p X^alpha + Y^alpha / 2.
void xy(double p, double rho, double T, double& X, double& Y) {
  X = ((2.0 - rho) * p - T) / (2.0 * (1.0 + 2.0 * p) * p);
  Y = (1.0 + p * rho + T) / (1.0 + 2.0 * p);
}

}  // namespace

double asym_p_min(double rho) { return (1.0 - rho) / (2.0 - 2.0 * rho + rho * rho); }

AsymAux asym_aux(double p, double rho) {
  check_asym_domain(p, rho);
  const double r = rho;
  const double T = t_of(p, r);
  AsymAux out{};
  out.T = T;
  out.A = p * ((-1.0 + 6.0 * p) * (1.0 - r) + 2.0 * p * r * r - 2.0 * (2.0 - r) * T);
  out.B = ((2.0 - r) * p - T) * 2.0 * (1.0 + 2.0 * p) * T;
  out.C = p * ((1.0 + 6.0 * p - 8.0 * p * p) * (1.0 - r) - 4.0 * r * r * p * p + 4.0 * p * (2.0 - r) * T);
  out.D = 2.0 * p * (p * r + 1.0 + T) / ((2.0 - r) * p - T);
  const double r2 = r * r, r3 = r2 * r, r4 = r3 * r, r5 = r4 * r;
  const double p2 = p * p, p3 = p2 * p, p4 = p3 * p;
  out.E = -16.0 * (2.0 * r4 - 9.0 * r3 + 17.0 * r2 - 16.0 * r + 6.0) * p3 -
          8.0 * (r4 + r3 - 10.0 * r2 + 14.0 * r - 7.0) * p2 - 8.0 * (r3 - r2 - 2.0 * r + 2.0) * p -
          2.0 * (r - 1.0) * (r - 1.0);
  out.F = -16.0 * (2.0 * r5 - 11.0 * r4 + 27.0 * r3 - 36.0 * r2 + 26.0 * r - 8.0) * p4 -
          4.0 * (2.0 * r5 + 4.0 * r4 - 39.0 * r3 + 86.0 * r2 - 83.0 * r + 32.0) * p3 -
          4.0 * (3.0 * r4 - 4.0 * r3 - 5.0 * r2 + 13.0 * r - 7.0) * p2 - (r - 1.0) * (r - 1.0) * (5.0 * r + 4.0) * p -
          (r - 1.0) * (r - 1.0);
  return out;
}

double asym_h(double alpha, double p, double rho) {
  check_asym_domain(p, rho);
  double X = 0.0, Y = 0.0;
  xy(p, rho, t_of(p, rho), X, Y);
  return p * std::pow(X, alpha) + 0.5 * std::pow(Y, alpha);
}

double asym_varphi(double alpha, double p, double rho) {
  require(alpha >= 1.0, ErrorCode::domain, "alpha must be at least 1");
  const AsymAux aux = asym_aux(p, rho);
  return -aux.A * std::pow(aux.D, alpha - 1.0) - aux.B / alpha + aux.C;
}

double asym_h_derivative(double alpha, double p, double rho) {
  const AsymAux aux = asym_aux(p, rho);
  require(aux.T > 0.0, ErrorCode::domain, "derivative formula needs T(p) > 0");
  double X = 0.0, Y = 0.0;
  xy(p, rho, aux.T, X, Y);
  const double phi = -aux.A * std::pow(aux.D, alpha - 1.0) - aux.B / alpha + aux.C;
  return std::pow(X, alpha - 1.0) * (-alpha * phi) / (4.0 * (1.0 + 2.0 * p) * (1.0 + 2.0 * p) * p * aux.T);
}

LemmaCheckReport lemma_grid_checks(const std::vector<double>& rho_grid, const std::vector<double>& p_grid,
                                   const std::vector<double>& alpha_grid) {
  constexpr double kTol = 1e-9;
  LemmaCheckReport report;
  report.method =
      "dense numeric sampling of interior grid points; derivative identity checked against central differences "
      "(relative tolerance 1e-5); sign claims with tolerance 1e-9";
  for (double rho : rho_grid) {
    detail::check_open_unit(rho, "rho");
    const double lo = asym_p_min(rho);
    for (double p : p_grid) {
      if (!(p > lo && p < 0.5)) continue;
      ++report.points;
      const AsymAux aux = asym_aux(p, rho);
      auto flag = [&](const char* name, double alpha, double value) {
        report.violations.push_back({name, rho, p, alpha, value});
      };
      if (aux.F > kTol) flag("F<=0", kNaN, aux.F);
      const double gap = aux.F * aux.F - aux.E * aux.E * aux.T * aux.T;
      if (gap < -kTol) flag("F^2>=E^2T^2", kNaN, gap);
      if (aux.A < -kTol) flag("A>=0", kNaN, aux.A);
      if (aux.B < -kTol) flag("B>=0", kNaN, aux.B);
      if (aux.D < -kTol) flag("D>=0", kNaN, aux.D);
      const double phi1 = -aux.A - aux.B + aux.C;
      report.max_phi1_abs = std::max(report.max_phi1_abs, std::abs(phi1));
      if (std::abs(phi1) > kTol * (1.0 + std::abs(aux.A) + std::abs(aux.B) + std::abs(aux.C)))
        flag("varphi(1,p)=0", 1.0, phi1);
      const double h1 = asym_h(1.0, p, rho);
      if (std::abs(h1 - 0.5) > kTol) flag("h_1(p)=1/2", 1.0, h1);

      const double step = 1e-3 * std::min(p - lo, 0.5 - p);
      for (double alpha : alpha_grid) {
        const double fd = (asym_h(alpha, p + step, rho) - asym_h(alpha, p - step, rho)) / (2.0 * step);
        const double formula = asym_h_derivative(alpha, p, rho);
        const double err = std::abs(fd - formula) / (1.0 + std::abs(formula));
        report.max_derivative_error = std::max(report.max_derivative_error, err);
        if (err > 1e-5) flag("dh/dp identity", alpha, err);
      }
    }
  }
  return report;
}

LemmaCheckReport lemma_grid_checks(const std::vector<double>& rho_grid, std::size_t p_points,
                                   const std::vector<double>& alpha_grid) {
  require(p_points >= 1, ErrorCode::invalid_argument, "need at least one p point");
  LemmaCheckReport total;
  for (double rho : rho_grid) {
    detail::check_open_unit(rho, "rho");
    const double lo = asym_p_min(rho);
    std::vector<double> ps(p_points);
    for (std::size_t i = 0; i < p_points; ++i)
      ps[i] = lo + (0.5 - lo) * static_cast<double>(i + 1) / static_cast<double>(p_points + 1);
    LemmaCheckReport part = lemma_grid_checks({rho}, ps, alpha_grid);
    total.points += part.points;
    total.violations.insert(total.violations.end(), part.violations.begin(), part.violations.end());
    total.max_derivative_error = std::max(total.max_derivative_error, part.max_derivative_error);
    total.max_phi1_abs = std::max(total.max_phi1_abs, part.max_phi1_abs);
    total.method = part.method;
  }
  return total;
}

}  // namespace phistab

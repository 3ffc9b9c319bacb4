#include <algorithm>
#include <cmath>

#include "bound_common.hpp"
#include "optimize.hpp"
#include "parallel.hpp"

namespace phistab {

using detail::kDenominatorFloor;
using detail::kSlack;
using detail::to_unit;
using detail::within;

namespace {

struct UpsPoint {
  bool ok = false;
  double p = 0.0;
  double q = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
};

double p_formula(double rho, double beta, double omega, double z1, double z2) {
  return (1.0 - rho) * (1.0 + rho - 4.0 * rho * rho * omega + 2.0 * beta * (1.0 + 2.0 * rho * z2 - rho * rho)) /
         (4.0 * (1.0 + 2.0 * rho * z1) * (1.0 + rho * z2 - rho * z1 - rho * rho));
}

double q_formula(double rho, double beta, double omega, double z1, double z2) {
  return (1.0 - rho) * (1.0 + rho - 4.0 * rho * rho * omega - 2.0 * beta * (1.0 - 2.0 * rho * z1 - rho * rho)) /
         (4.0 * (1.0 - 2.0 * rho * z2) * (1.0 + rho * z2 - rho * z1 - rho * rho));
}

UpsPoint ups_point(double rho, double beta, double omega, double z1, double z2) {
  UpsPoint out;
  const double edge = 1.0 / (2.0 * rho);
  if (z1 < -edge - kSlack || z2 > edge + kSlack || z1 > z2 + kSlack) return out;
  if (1.0 + 2.0 * rho * z1 < kDenominatorFloor || 1.0 - 2.0 * rho * z2 < kDenominatorFloor) return out;
  if (1.0 + rho * z2 - rho * z1 - rho * rho < kDenominatorFloor) return out;
  out.p = p_formula(rho, beta, omega, z1, z2);
  out.q = q_formula(rho, beta, omega, z1, z2);
  if (!within(out.p, 0.0, 0.25 + 0.5 * beta) || !within(out.q, 0.0, 0.25 - 0.5 * beta)) return out;
  out.t1 = 0.5 + rho * z1;
  out.t2 = 0.5 + rho * z2;
  if (!to_unit(out.t1) || !to_unit(out.t2)) return out;
  out.ok = true;
  return out;
}

// Solves the q-equation for z1 given z2 and q = t (1/4 - beta/2). The q
// constraint collapses to a line as beta -> 1/2, so the search runs over
// (beta, z2, t) instead of (beta, z1, z2).
bool solve_z1(double rho, double beta, double omega, double z2, double t, double& z1) {
  const double q = t * (0.25 - 0.5 * beta);
  const double m = 4.0 * q * (1.0 - 2.0 * rho * z2);
  const double l = 1.0 + rho * z2 - rho * rho;
  const double k = 1.0 + rho - 4.0 * rho * rho * omega - 2.0 * beta * (1.0 - rho * rho);
  const double den = rho * (4.0 * beta * (1.0 - rho) + m);
  if (den < kDenominatorFloor) return false;
  z1 = (m * l - (1.0 - rho) * k) / den;
  return std::isfinite(z1);
}

double h_value(const UpsPoint& pt, double phi0, double phi_t1, double phi_t2) {
  return (1.0 - 2.0 * pt.p - 2.0 * pt.q) * phi0 + 2.0 * pt.p * phi_t1 + 2.0 * pt.q * phi_t2;
}

struct Cell {
  double value = kInfeasible;
  std::size_t z2_index = 0;
  std::size_t t_index = 0;
};

// Re-validates the symmetric eight-atom law of (S, X, Z) built from the argmax.
double ups_residual(double rho, double beta, double omega, double z1, double z2, double p, double q) {
  const double edge = 1.0 / (2.0 * rho);
  struct Row {
    double s, x, z, prob;
  };
  const Row half[] = {{-0.5, -1.0, -edge, (1.0 + 2.0 * beta) / 4.0 - p},
                      {-0.5, -1.0, z1, p},
                      {0.5, -1.0, edge, (1.0 - 2.0 * beta) / 4.0 - q},
                      {0.5, -1.0, z2, q}};
  double mass = 0.0, mean = 0.0, corr = 0.0, energy = 0.0, worst = 0.0;
  for (const Row& r : half) {
    for (double sign : {1.0, -1.0}) {
      const double s = sign * r.s, x = sign * r.x, z = sign * r.z;
      worst = std::max(worst, -r.prob);
      mass += r.prob;
      mean += r.prob * z;
      corr += r.prob * x * z;
      energy += r.prob * (z * z - rho * s * z);
    }
  }
  worst = std::max(worst, std::abs(mass - 1.0));
  worst = std::max(worst, std::abs(mean));
  worst = std::max(worst, std::abs(corr - beta));
  worst = std::max(worst, std::abs(energy - (1.0 - rho) * omega));
  worst = std::max({worst, -edge - z1, z1 - z2, z2 - edge, -beta, beta - 0.5});
  return std::max(worst, 0.0);
}

}  // namespace

double upsilon_objective(double rho, const PhiSpec& spec, double beta, double omega, double z1, double z2) {
  const UpsPoint pt = ups_point(rho, beta, omega, z1, z2);
  if (!pt.ok) return kInfeasible;
  return h_value(pt, spec(0.0), spec(pt.t1), spec(pt.t2));
}

BoundResult upsilon_bar(double rho, const PhiSpec& spec, const WeightFunction& omega, const SearchOptions& options) {
  detail::check_open_unit(rho, "rho");
  require(spec.symmetric(), ErrorCode::domain, "upsilon_bar requires a symmetric Phi");
  require(static_cast<bool>(omega), ErrorCode::invalid_argument, "upsilon_bar requires a weight function");
  require(options.grid >= 3, ErrorCode::invalid_argument, "grid must have at least 3 points");

  BoundResult result;
  result.kind = BoundKind::upsilon;
  result.diagnostics.grid = options.grid;
  result.diagnostics.notes.push_back(detail::regime_note(BoundKind::upsilon, spec));
  result.diagnostics.notes.push_back("inner search parametrised by (z2, q / (1/4 - beta/2)); z1 solved from q");

  const std::size_t n = options.grid;
  const double edge = 1.0 / (2.0 * rho);
  const double z2_lo = -edge;
  const double z2_hi = edge - kDenominatorFloor / rho;
  std::vector<double> betas(n), omegas(n), z2s(n), ts(n), phi_z2(n);
  for (std::size_t i = 0; i < n; ++i) {
    betas[i] = grid_point(0.0, 0.5, i, n);
    omegas[i] = omega(betas[i]);
    require(std::isfinite(omegas[i]) && omegas[i] >= 0.0 && omegas[i] <= 0.25 + 1e-15, ErrorCode::domain,
            "weight function must map [0, 1/2] into [0, 1/4]");
    z2s[i] = grid_point(z2_lo, z2_hi, i, n);
    ts[i] = grid_point(0.0, 1.0, i, n);
    phi_z2[i] = spec(std::clamp(0.5 + rho * z2s[i], 0.0, 1.0));
  }
  const double phi0 = spec(0.0);

  std::vector<Cell> cells(n);
  parallel_for(n, options.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) {
      Cell& cell = cells[b];
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          double z1 = 0.0;
          if (!solve_z1(rho, betas[b], omegas[b], z2s[j], ts[k], z1)) continue;
          const UpsPoint pt = ups_point(rho, betas[b], omegas[b], z1, z2s[j]);
          if (!pt.ok) continue;
          const double v = h_value(pt, phi0, spec(pt.t1), phi_z2[j]);
          if (v > cell.value) {
            cell = Cell{v, j, k};
          }
        }
      }
    }
  });
  std::size_t best = n;
  for (std::size_t b = 0; b < n; ++b) {
    if (cells[b].value == kInfeasible) continue;
    if (best == n || cells[b].value > cells[best].value) best = b;
  }
  require(best < n, ErrorCode::infeasible, "upsilon_bar: no feasible grid point");

  auto objective = [&](const std::vector<double>& x) {
    const double w = omega(x[0]);
    double z1 = 0.0;
    if (!solve_z1(rho, x[0], w, x[1], x[2], z1)) return kInfeasible;
    return upsilon_objective(rho, spec, x[0], w, z1, x[1]);
  };
  std::vector<double> arg = {betas[best], z2s[cells[best].z2_index], ts[cells[best].t_index]};
  double value = cells[best].value;
  const double step_beta = 0.5 / static_cast<double>(n - 1);
  const double step_z = (z2_hi - z2_lo) / static_cast<double>(n - 1);
  const double step_t = 1.0 / static_cast<double>(n - 1);
  const OptimumND refined = nelder_mead_max(objective, arg, {step_beta, step_z, step_t}, {0.0, z2_lo, 0.0},
                                            {0.5, z2_hi, 1.0}, options.tolerance);
  result.diagnostics.refine_iters = refined.iterations;
  if (refined.value > value) {
    arg = refined.x;
    value = refined.value;
  }

  const double beta = arg[0];
  const double w = omega(beta);
  double z1 = 0.0;
  solve_z1(rho, beta, w, arg[1], arg[2], z1);
  const UpsPoint pt = ups_point(rho, beta, w, z1, arg[1]);
  result.value = value;
  result.feasible = true;
  result.argmax.beta = beta;
  result.argmax.z1 = z1;
  result.argmax.z2 = arg[1];
  result.argmax.p = pt.p;
  result.argmax.q = pt.q;
  result.diagnostics.residual = ups_residual(rho, beta, w, z1, arg[1], pt.p, pt.q);
  return result;
}

}  // namespace phistab

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <tuple>

#include "bound_common.hpp"
#include "optimize.hpp"
#include "parallel.hpp"

namespace phistab {

using detail::kDenominatorFloor;
using detail::kSlack;
using detail::to_unit;
using detail::within;

namespace {

struct BarPoint {
  bool ok = false;
  double p = 0.0;
  double q = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
};

BarPoint bar_point(double a, double rho, double z1, double z2) {
  BarPoint out;
  const double low = a + rho * z1;
  const double high = 1.0 - a - rho * z2;
  if (low < kDenominatorFloor || high < kDenominatorFloor) return out;
  if (z1 > (1.0 - a) / rho || z2 < -a / rho) return out;
  const double den = 1.0 - rho - rho * z1 + rho * z2;
  if (den < kDenominatorFloor) return out;
  const double gap = z2 - z1;
  if (gap < 0.5 - kSlack) return out;
  if (gap < (1.0 - rho) * z2 / high - kSlack) return out;
  if (gap < -(1.0 - rho) * z1 / low - kSlack) return out;
  const double num = (1.0 - a) * a * (1.0 - rho);
  out.p = num / (den * low);
  out.q = num / (den * high);
  if (!within(out.p, 0.0, 1.0 - a) || !within(out.q, 0.0, a)) return out;
  out.t1 = low;
  out.t2 = a + rho * z2;
  if (!to_unit(out.t1) || !to_unit(out.t2)) return out;
  out.ok = true;
  return out;
}

// A face of the Gamma-bar feasible set as a curve t -> (z1, z2).
struct Face {
  const char* name;
  double lo;
  double hi;
  std::function<std::pair<double, double>(double)> point;
};

double bar_value(double a, const BarPoint& pt, double phi0, double phi1, double phi_t1, double phi_t2) {
  return (1.0 - a - pt.p) * phi0 + pt.p * phi_t1 + pt.q * phi_t2 + (a - pt.q) * phi1;
}

SZDistribution bar_distribution(double a, double rho, double z1, double z2, double p, double q) {
  return SZDistribution{a,
                        {{-a, -a / rho, 1.0 - a - p}, {-a, z1, p}, {1.0 - a, z2, q}, {1.0 - a, (1.0 - a) / rho, a - q}}};
}

// Independent re-validation of a Gamma-bar argmax against its feasible set.
double bar_residual(double a, double rho, double z1, double z2, double p, double q) {
  double worst = bar_distribution(a, rho, z1, z2, p, q).residual();
  const double low = a + rho * z1;
  const double high = 1.0 - a - rho * z2;
  const double gap = z2 - z1;
  worst = std::max(worst, 0.5 - gap);
  worst = std::max(worst, (1.0 - rho) * z2 / high - gap);
  worst = std::max(worst, -(1.0 - rho) * z1 / low - gap);
  worst = std::max({worst, -low, -high, p - (1.0 - a), q - a, -p, -q});
  return std::max(worst, 0.0);
}

struct HatPoint {
  bool ok = false;
  double z_hat = 0.0;
  double p = 0.0;
  double t_low = 0.0;
  double t_mirror = 0.0;
  double t_high = 0.0;
};

HatPoint hat_point(double a, double rho, double zt) {
  HatPoint out;
  const double b = (1.0 - 2.0 * a) / rho;
  double delta = a * (b * b - 4.0 * b * zt + 2.0 * b + 4.0 * zt * zt + 1.0) + 4.0 * zt * (b - zt);
  if (delta < 0.0) {
    if (delta < -kSlack) return out;
    delta = 0.0;
  }
  const double den = 2.0 * (b - 2.0 * zt);
  if (std::abs(den) < kDenominatorFloor) return out;
  out.z_hat = 0.5 * (std::sqrt(delta / a) + b + 1.0);
  out.p = (-std::sqrt(a * delta) - (a * (b + 1.0 - 2.0 * zt) + 2.0 * zt)) / den;
  if (!within(out.p, 0.0, 1.0 - a)) return out;
  out.p = std::clamp(out.p, 0.0, 1.0 - a);
  out.t_low = a + rho * zt;
  out.t_mirror = a + rho * (b - zt);
  out.t_high = a + rho * out.z_hat;
  if (!to_unit(out.t_low) || !to_unit(out.t_mirror) || !to_unit(out.t_high)) return out;
  out.ok = true;
  return out;
}

double hat_objective(double a, double rho, const PhiSpec& spec, double zt) {
  const HatPoint pt = hat_point(a, rho, zt);
  if (!pt.ok) return kInfeasible;
  return (1.0 - a - pt.p) * spec(pt.t_low) + pt.p * spec(pt.t_mirror) + a * spec(pt.t_high);
}

SZDistribution hat_distribution(double a, double rho, double zt, double z_hat, double p) {
  const double b = (1.0 - 2.0 * a) / rho;
  return SZDistribution{a, {{-a, zt, 1.0 - a - p}, {-a, b - zt, p}, {1.0 - a, z_hat, a}}};
}

struct TildePoint {
  bool ok = false;
  double z1 = 0.0;
  double p = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
};

TildePoint tilde_point(double a, double rho, double z2) {
  TildePoint out;
  const double high = 1.0 - a - rho * z2;
  if (high < kDenominatorFloor) return out;
  const double den = a + rho * rho * z2 - (a + rho * z2) * (a + rho * z2);
  if (den < kDenominatorFloor) return out;
  out.z1 = z2 * (rho * (1.0 - z2) - a) / high;
  out.p = a * high * high / den;
  if (!within(out.p, 0.0, 1.0 - a)) return out;
  out.p = std::clamp(out.p, 0.0, 1.0 - a);
  out.t1 = a + rho * out.z1;
  out.t2 = a + rho * z2;
  if (!to_unit(out.t1) || !to_unit(out.t2)) return out;
  out.ok = true;
  return out;
}

double tilde_objective(double a, double rho, const PhiSpec& spec, double z2) {
  const TildePoint pt = tilde_point(a, rho, z2);
  if (!pt.ok) return kInfeasible;
  return (1.0 - a - pt.p) * spec(0.0) + pt.p * spec(pt.t1) + a * spec(pt.t2);
}

SZDistribution tilde_distribution(double a, double rho, double z1, double z2, double p) {
  return SZDistribution{a, {{-a, -a / rho, 1.0 - a - p}, {-a, z1, p}, {1.0 - a, z2, a}}};
}

// S -> -S, Z -> -Z maps the program at mean 1 - a onto the one at mean a.
SZDistribution mirror(const SZDistribution& d) {
  SZDistribution out{1.0 - d.a, {}};
  for (const SZAtom& atom : d.atoms) out.atoms.push_back({-atom.s, -atom.z, atom.probability});
  return out;
}

void check_search(const SearchOptions& options) {
  require(options.grid >= 3, ErrorCode::invalid_argument, "grid must have at least 3 points");
  require(options.tolerance > 0.0, ErrorCode::invalid_argument, "tolerance must be positive");
}

BoundResult gamma_hat_any(double a, double rho, const PhiSpec& spec, const SearchOptions& options) {
  BoundResult result;
  result.kind = BoundKind::gamma_hat;
  result.diagnostics.grid = options.grid;
  const double b = (1.0 - 2.0 * a) / rho;
  const double c = 0.5 * (b - std::sqrt((a + 2.0 * a * b + b * b) / (1.0 - a)));
  double lo = std::max(-a / rho, c);
  const double hi = -a * (1.0 + b) / (2.0 * (1.0 - a));
  if (lo > hi) {
    if (lo - hi > 1e-12) {
      result.diagnostics.notes.push_back("empty z-tilde interval");
      return result;
    }
    lo = hi;
  }
  Optimum1D best;
  if (lo == hi) {
    best.x = lo;
    best.value = hat_objective(a, rho, spec, lo);
  } else {
    best = grid_refine_max([&](double zt) { return hat_objective(a, rho, spec, zt); }, lo, hi, options.grid,
                           options.tolerance, options.workers);
  }
  if (best.value == kInfeasible) {
    result.diagnostics.notes.push_back("no feasible z-tilde on the grid");
    return result;
  }
  const HatPoint pt = hat_point(a, rho, best.x);
  result.value = best.value;
  result.feasible = true;
  result.argmax.z_tilde = best.x;
  result.argmax.z_hat = pt.z_hat;
  result.argmax.p = pt.p;
  result.diagnostics.refine_iters = best.iterations;
  result.distribution = hat_distribution(a, rho, best.x, pt.z_hat, pt.p);
  result.diagnostics.residual = std::max(
      {result.distribution->residual(), best.x < lo ? lo - best.x : 0.0, best.x > hi ? best.x - hi : 0.0});
  return result;
}

}  // namespace

double gamma_bar_objective(double a, double rho, const PhiSpec& spec, double z1, double z2) {
  const BarPoint pt = bar_point(a, rho, z1, z2);
  if (!pt.ok) return kInfeasible;
  return bar_value(a, pt, spec(0.0), spec(1.0), spec(pt.t1), spec(pt.t2));
}

BoundResult gamma_bar(double a, double rho, const PhiSpec& spec, const SearchOptions& options) {
  require(std::isfinite(a) && a > 0.0 && a <= 0.5, ErrorCode::domain, "gamma_bar requires a in (0, 1/2]");
  detail::check_open_unit(rho, "rho");
  require(spec.symmetric(), ErrorCode::domain, "gamma_bar requires a symmetric Phi");
  check_search(options);

  BoundResult result;
  result.kind = BoundKind::gamma_bar;
  result.diagnostics.grid = options.grid;
  result.diagnostics.notes.push_back(detail::regime_note(BoundKind::gamma_bar, spec));

  double z1 = 0.0;
  double z2 = 0.0;
  double value = kInfeasible;
  if (a == 0.5) {
    // z1 + z2 = 0 at a = 1/2: one-dimensional search over z1 in [-1/2, -1/4].
    result.diagnostics.notes.push_back("a = 1/2: searched z2 = -z1");
    const Optimum1D best = grid_refine_max([&](double x) { return gamma_bar_objective(a, rho, spec, x, -x); },
                                           -0.5, -0.25, options.grid, options.tolerance, options.workers);
    z1 = best.x;
    z2 = -best.x;
    value = best.value;
    result.diagnostics.refine_iters = best.iterations;
  } else {
    const std::size_t n = options.grid;
    const double lo = -a / rho;
    const double hi = (1.0 - a) / rho;
    std::vector<double> zs(n);
    std::vector<double> phis(n);
    for (std::size_t i = 0; i < n; ++i) {
      zs[i] = grid_point(lo, hi, i, n);
      phis[i] = spec(std::clamp(a + rho * zs[i], 0.0, 1.0));
    }
    const double phi0 = spec(0.0);
    const double phi1 = spec(1.0);
    std::vector<double> row_value(n, kInfeasible);
    std::vector<std::size_t> row_arg(n, 0);
    parallel_for(n, options.workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t j = i; j < n; ++j) {
          const BarPoint pt = bar_point(a, rho, zs[i], zs[j]);
          if (!pt.ok) continue;
          const double v = bar_value(a, pt, phi0, phi1, phis[i], phis[j]);
          if (v > row_value[i]) {
            row_value[i] = v;
            row_arg[i] = j;
          }
        }
      }
    });
    const std::size_t best_row = argmax_first(row_value);
    require(best_row < n, ErrorCode::infeasible, "gamma_bar: no feasible grid point");
    z1 = zs[best_row];
    z2 = zs[row_arg[best_row]];
    value = row_value[best_row];
    const double step = (hi - lo) / static_cast<double>(n - 1);
    const OptimumND refined = nelder_mead_restarts(
        [&](const std::vector<double>& x) { return gamma_bar_objective(a, rho, spec, x[0], x[1]); }, {z1, z2},
        {step, step}, {lo, lo}, {hi, hi}, options.tolerance);
    result.diagnostics.refine_iters = refined.iterations;
    if (refined.value > value) {
      z1 = refined.x[0];
      z2 = refined.x[1];
      value = refined.value;
    }
    // The maximiser often sits on a face of the feasible set, where the
    // simplex stalls; each face is a curve searched in one variable.
    const double edge = kDenominatorFloor / rho;
    const Face faces[] = {
        {"q = a", lo, hi - edge,
         [&](double t) {
           return std::pair{((1.0 - rho + rho * t) - (1.0 - a) * (1.0 - rho) / (1.0 - a - rho * t)) / rho, t};
         }},
        {"p = 1 - a", lo + edge, hi,
         [&](double t) {
           return std::pair{t, (a * (1.0 - rho) / (a + rho * t) - (1.0 - rho) + rho * t) / rho};
         }},
        {"z2 - z1 = 1/2", lo, hi - 0.5, [](double t) { return std::pair{t, t + 0.5}; }},
    };
    for (const Face& face : faces) {
      if (!(face.hi > face.lo)) continue;
      const Optimum1D best = grid_refine_max(
          [&](double t) {
            const auto [f1, f2] = face.point(t);
            return gamma_bar_objective(a, rho, spec, f1, f2);
          },
          face.lo, face.hi, options.grid, options.tolerance, options.workers);
      result.diagnostics.refine_iters += best.iterations;
      if (best.value > value) {
        std::tie(z1, z2) = face.point(best.x);
        value = best.value;
        result.diagnostics.notes.push_back(std::string("maximum on the face ") + face.name);
      }
    }
    // Z = S is the corner where the first two faces meet; a search along a
    // face stops short of it by the refinement tolerance.
    const double corner = gamma_bar_objective(a, rho, spec, -a, 1.0 - a);
    if (corner > value) {
      z1 = -a;
      z2 = 1.0 - a;
      value = corner;
      result.diagnostics.notes.push_back("maximum at the corner Z = S");
    }
  }
  require(value != kInfeasible, ErrorCode::infeasible, "gamma_bar: feasible set is empty on the search grid");

  const BarPoint pt = bar_point(a, rho, z1, z2);
  result.value = value;
  result.feasible = true;
  result.argmax.z1 = z1;
  result.argmax.z2 = z2;
  result.argmax.p = pt.p;
  result.argmax.q = pt.q;
  result.distribution = bar_distribution(a, rho, z1, z2, pt.p, pt.q);
  result.diagnostics.residual = bar_residual(a, rho, z1, z2, pt.p, pt.q);
  return result;
}

BoundResult gamma_hat(double a, double rho, const PhiSpec& spec, const SearchOptions& options) {
  detail::check_open_unit(a, "a");
  detail::check_open_unit(rho, "rho");
  require(spec.symmetric(), ErrorCode::domain, "gamma_hat requires a symmetric Phi");
  check_search(options);
  BoundResult result = gamma_hat_any(a, rho, spec, options);
  result.diagnostics.notes.insert(result.diagnostics.notes.begin(),
                                  detail::regime_note(BoundKind::gamma_hat, spec));
  return result;
}

BoundResult lambda_statement2(double a, double rho, const PhiSpec& spec, const SearchOptions& options) {
  require(std::isfinite(a) && a > 0.0 && a <= 0.5, ErrorCode::domain, "lambda2 requires a in (0, 1/2]");
  detail::check_open_unit(rho, "rho");
  require(spec.symmetric(), ErrorCode::domain, "lambda2 requires a symmetric Phi");
  check_search(options);

  BoundResult result;
  result.kind = BoundKind::lambda2;
  result.diagnostics.grid = options.grid;
  result.diagnostics.notes.push_back(detail::regime_note(BoundKind::lambda2, spec));

  const BoundResult own = gamma_hat_any(a, rho, spec, options);
  const BoundResult flipped = gamma_hat_any(1.0 - a, rho, spec, options);
  const double two_point = (1.0 - a) * spec(a - rho * a) + a * spec(a + rho * (1.0 - a));

  if (!own.feasible) result.diagnostics.notes.push_back("gamma-hat(a): empty feasible interval, omitted");
  if (!flipped.feasible) result.diagnostics.notes.push_back("gamma-hat(1-a): empty feasible interval, omitted");

  result.value = two_point;
  result.argmax.z_tilde = -a;
  result.argmax.z_hat = 1.0 - a;
  result.argmax.p = 0.0;
  result.distribution = SZDistribution{a, {{-a, -a, 1.0 - a}, {1.0 - a, 1.0 - a, a}}};
  std::string source = "two-point Z = S";
  if (own.feasible && own.value > result.value) {
    result.value = own.value;
    result.argmax = own.argmax;
    result.distribution = own.distribution;
    result.diagnostics.refine_iters = own.diagnostics.refine_iters;
    source = "gamma-hat(a)";
  }
  if (flipped.feasible && flipped.value > result.value) {
    result.value = flipped.value;
    result.argmax = flipped.argmax;
    result.distribution = mirror(*flipped.distribution);
    result.diagnostics.refine_iters = flipped.diagnostics.refine_iters;
    source = "gamma-hat(1-a), parameters in the mirrored program";
  }
  result.feasible = true;
  result.diagnostics.notes.push_back("maximum attained by " + source);
  result.diagnostics.residual = result.distribution->residual();
  return result;
}

BoundResult gamma_tilde(double a, double rho, const PhiSpec& spec, TildeMode mode, const SearchOptions& options) {
  detail::check_open_unit(a, "a");
  detail::check_open_unit(rho, "rho");
  check_search(options);

  BoundResult result;
  result.kind = BoundKind::gamma_tilde;
  result.diagnostics.grid = options.grid;
  result.diagnostics.notes.push_back(detail::regime_note(BoundKind::gamma_tilde, spec));

  bool reflect = mode == TildeMode::reflected;
  if (mode == TildeMode::automatic) {
    const DerivativeShape shape = spec.derivative_shape();
    require(shape != DerivativeShape::linear, ErrorCode::domain,
            "gamma_tilde: Phi' is linear, neither direct nor reflected form applies");
    reflect = shape == DerivativeShape::convex;
  }
  const PhiSpec working = reflect ? spec.reflect() : spec;
  const double aw = reflect ? 1.0 - a : a;
  if (reflect) result.diagnostics.notes.push_back("reflected: Phi(t) -> Phi(1-t), a -> 1-a; parameters in that frame");

  const Optimum1D best = grid_refine_max([&](double z2) { return tilde_objective(aw, rho, working, z2); }, 0.0,
                                         1.0 - aw, options.grid, options.tolerance, options.workers);
  require(best.value != kInfeasible, ErrorCode::infeasible, "gamma_tilde: no feasible z2 in [0, 1-a]");
  const TildePoint pt = tilde_point(aw, rho, best.x);
  result.value = best.value;
  result.feasible = true;
  result.argmax.z1 = pt.z1;
  result.argmax.z2 = best.x;
  result.argmax.p = pt.p;
  result.diagnostics.refine_iters = best.iterations;
  result.distribution = tilde_distribution(aw, rho, pt.z1, best.x, pt.p);
  result.diagnostics.residual = std::max({result.distribution->residual(), -best.x, best.x - (1.0 - aw), 0.0});
  return result;
}

}  // namespace phistab

#include "fkn_weights.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "error.hpp"

namespace phistab {

namespace {

constexpr int kMaxEnumeration = 4;

// Points with coordinate i+1 equal to +1, for each i.
std::uint64_t coordinate_mask(int n, int i) {
  std::uint64_t mask = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    if ((x >> i) & 1u) mask |= std::uint64_t{1} << x;
  }
  return mask;
}

std::uint64_t exact_count(int n, double a) {
  const double scaled = std::ldexp(a, n);
  require(std::isfinite(a) && a >= 0.0 && a <= 1.0 && scaled == std::floor(scaled), ErrorCode::domain,
          "mean a must be a multiple of 2^-n in [0, 1]");
  return static_cast<std::uint64_t>(scaled);
}

template <class Accept>
std::optional<WeightMaximum> scan(int n, double a, Accept accept) {
  require(n >= 1 && n <= kMaxEnumeration, ErrorCode::invalid_argument, "exhaustive weights support 1 <= n <= 4");
  const std::uint64_t k = exact_count(n, a);
  const std::uint64_t total = std::uint64_t{1} << (std::uint64_t{1} << n);
  std::optional<WeightMaximum> best;
  int best_sum = -1;
  std::uint64_t best_table = 0;
  for (std::uint64_t table = 0; table < total; ++table) {
    if (static_cast<std::uint64_t>(std::popcount(table)) != k) continue;
    const FirstOrder fo = first_order(n, table);
    if (!accept(fo)) continue;
    if (fo.sum_sq > best_sum) {
      best_sum = fo.sum_sq;
      best_table = table;
    }
  }
  if (best_sum < 0) return best;
  WeightMaximum out{std::ldexp(static_cast<double>(best_sum), -2 * n), static_cast<std::uint64_t>(best_sum),
                    BooleanFunction::from_table(n, best_table)};
  return out;
}

}  // namespace

double phi_chang(double t) {
  require(std::isfinite(t) && t > 0.0 && t <= 0.5, ErrorCode::domain, "phi_chang requires t in (0, 1/2]");
  if (t > 0.25) return 0.5 * t;
  const double t2 = t * t;
  const double best = std::min(2.0 * t2 * std::log(1.0 / t), 2.0 * t2 * (1.0 / std::sqrt(t) - 1.0));
  // At t = 1/4 the second piece and t/2 both equal 1/8.
  return t == 0.25 ? std::min(best, 0.5 * t) : best;
}

double varphi(double t) {
  require(std::isfinite(t) && t >= 0.0 && t <= 1.0, ErrorCode::domain, "varphi requires t in [0, 1]");
  const double u = std::min(t, 1.0 - t);
  return u == 0.0 ? 0.0 : phi_chang(u);
}

double omega_fkn(double a, double beta) {
  require(std::isfinite(a) && std::isfinite(beta) && beta >= 0.0 && beta <= a && a <= 0.5, ErrorCode::domain,
          "omega_fkn requires 0 <= beta <= a <= 1/2");
  const double head = std::max(varphi(a) - a * a, 0.0);
  const double root = std::sqrt(head) + std::sqrt(varphi(a - beta));
  return beta * beta + root * root;
}

double omega_khintchine(double beta) {
  require(std::isfinite(beta) && beta >= 0.0 && beta <= 0.5, ErrorCode::domain,
          "omega_khintchine requires beta in [0, 1/2]");
  const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  const double root = std::sqrt(4.0 * (0.5 - c) * beta + c * c) + c;
  return 0.25 * root * root;
}

double omega_min(double beta) { return std::min({omega_fkn(0.5, beta), omega_khintchine(beta), 0.25}); }

double WeightBoundSpec::operator()(double beta) const {
  double v = 0.25;
  switch (kind) {
    case WeightBoundKind::chang_combined:
      v = varphi(0.5);
      break;
    case WeightBoundKind::fkn_recursive:
      v = omega_fkn(0.5, beta);
      break;
    case WeightBoundKind::khintchine:
      v = omega_khintchine(beta);
      break;
    case WeightBoundKind::pointwise_min:
      v = omega_min(beta);
      break;
  }
  return std::min(v, cap);
}

const char* to_string(WeightBoundKind kind) noexcept {
  switch (kind) {
    case WeightBoundKind::chang_combined:
      return "trivial";
    case WeightBoundKind::fkn_recursive:
      return "fkn";
    case WeightBoundKind::khintchine:
      return "khintchine";
    case WeightBoundKind::pointwise_min:
      return "min";
  }
  return "unknown";
}

std::optional<WeightBoundKind> parse_weight_bound_kind(const std::string& name) {
  for (WeightBoundKind kind : {WeightBoundKind::chang_combined, WeightBoundKind::fkn_recursive,
                               WeightBoundKind::khintchine, WeightBoundKind::pointwise_min}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

FirstOrder first_order(int n, std::uint64_t table) {
  FirstOrder out;
  const int ones = std::popcount(table);
  for (int i = 0; i < n; ++i) {
    const int plus = std::popcount(table & coordinate_mask(n, i));
    const int c = 2 * plus - ones;
    out.sum_sq += c * c;
    out.max_abs = std::max(out.max_abs, std::abs(c));
  }
  return out;
}

WeightMaximum exhaustive_W(int n, double a) {
  return *scan(n, a, [](const FirstOrder&) { return true; });
}

std::optional<WeightMaximum> exhaustive_W_beta(int n, double a, double beta) {
  require(std::isfinite(beta) && beta >= 0.0 && beta <= 0.5, ErrorCode::domain, "beta must lie in [0, 1/2]");
  const double scaled = std::ldexp(beta, n);
  if (scaled != std::floor(scaled)) {
    require(n >= 1 && n <= kMaxEnumeration, ErrorCode::invalid_argument, "exhaustive weights support 1 <= n <= 4");
    exact_count(n, a);
    return std::nullopt;
  }
  const int target = static_cast<int>(scaled);
  return scan(n, a, [target](const FirstOrder& fo) { return fo.max_abs == target; });
}

}  // namespace phistab

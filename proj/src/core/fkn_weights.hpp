#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cube_fourier.hpp"

namespace phistab {

double phi_chang(double t);
double varphi(double t);
double omega_fkn(double a, double beta);
double omega_khintchine(double beta);
double omega_min(double beta);

enum class WeightBoundKind { chang_combined, fkn_recursive, khintchine, pointwise_min };

struct WeightBoundSpec {
  WeightBoundKind kind = WeightBoundKind::pointwise_min;
  double cap = 0.25;
  // Bound on W_1 of balanced functions whose largest |f^({i})| equals beta.
  double operator()(double beta) const;
};

const char* to_string(WeightBoundKind kind) noexcept;
std::optional<WeightBoundKind> parse_weight_bound_kind(const std::string& name);

struct WeightMaximum {
  double value = 0.0;
  std::uint64_t numerator = 0;  // value = numerator / 4^n
  BooleanFunction witness;
};

// W_1[f] = sum_i f^({i})^2 maximised over all f on n <= 4 coordinates with
// mean a; the witness is the smallest maximising table.
WeightMaximum exhaustive_W(int n, double a);
// Same, restricted to max_i |f^({i})| = beta. Empty when no function matches.
std::optional<WeightMaximum> exhaustive_W_beta(int n, double a, double beta);

// First-order data of one function in integer form: c_i = 2^n f^({i}).
struct FirstOrder {
  int sum_sq = 0;
  int max_abs = 0;
};
FirstOrder first_order(int n, std::uint64_t table);

}  // namespace phistab

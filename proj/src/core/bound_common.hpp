#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"
#include "stability_bounds.hpp"

namespace phistab::detail {

inline constexpr double kSlack = 1e-12;
inline constexpr double kDenominatorFloor = 1e-10;

// Accepts t within kSlack of [0, 1] and clips it; false otherwise.
inline bool to_unit(double& t) {
  if (!(t >= -kSlack && t <= 1.0 + kSlack)) return false;
  t = std::clamp(t, 0.0, 1.0);
  return true;
}

inline bool within(double v, double lo, double hi) { return v >= lo - kSlack && v <= hi + kSlack; }

inline void check_open_unit(double v, const char* name) {
  require(std::isfinite(v) && v > 0.0 && v < 1.0, ErrorCode::domain, std::string(name) + " must lie in (0, 1)");
}

inline std::string regime_note(BoundKind kind, const PhiSpec& spec) {
  std::string note = std::string("regime: Phi' is ") + to_string(spec.derivative_shape()) +
                     (spec.symmetric() ? " on (0, 1/2]" : " on (0, 1)");
  if (auto violation = regime_violation(kind, spec)) note += "; assumption not met: " + *violation;
  return note;
}

}  // namespace phistab::detail

#pragma once

#include <cstddef>
#include <vector>

namespace phistab {

struct LpResult {
  bool feasible = false;
  double objective = 0.0;
  // Sum of artificials left after phase one, or the constraint violation of
  // a solution rejected by the final check; zero when feasible.
  double infeasibility = 0.0;
  std::vector<double> x;
};

// maximize c.x subject to A x = b, x >= 0. Dense two-phase simplex with
// Bland's rule; meant for the handful of rows used by the bound programs.
LpResult simplex_max(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                     const std::vector<double>& c);

}  // namespace phistab

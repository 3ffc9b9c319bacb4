#include "simplex_lp.hpp"

#include <cmath>

#include "error.hpp"

namespace phistab {

namespace {

constexpr double kPivotEps = 1e-9;
// Accepted violation of Ax = b, x >= 0 when re-checking a solution.
constexpr double kCheckTolerance = 1e-12;

struct Tableau {
  std::size_t rows;
  std::size_t cols;  // excluding the right-hand side
  std::vector<std::vector<double>> t;  // rows + 1 lines, last is the objective
  std::vector<std::size_t> basis;

  double& rhs(std::size_t r) { return t[r][cols]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double piv = t[pr][pc];
    for (double& v : t[pr]) v /= piv;
    for (std::size_t r = 0; r <= rows; ++r) {
      if (r == pr) continue;
      const double factor = t[r][pc];
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c <= cols; ++c) t[r][c] -= factor * t[pr][c];
    }
    basis[pr] = pc;
  }

  // Objective row holds reduced costs of the minimisation form; runs until
  // no entering column among `allowed` columns has a negative cost.
  bool optimise(std::size_t allowed) {
    for (int guard = 0; guard < 10000; ++guard) {
      std::size_t enter = allowed;
      for (std::size_t c = 0; c < allowed; ++c) {
        if (t[rows][c] < -kPivotEps) {
          enter = c;
          break;
        }
      }
      if (enter == allowed) return true;
      std::size_t leave = rows;
      double best = 0.0;
      for (std::size_t r = 0; r < rows; ++r) {
        if (t[r][enter] > kPivotEps) {
          const double ratio = t[r][cols] / t[r][enter];
          if (leave == rows || ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && basis[r] < basis[leave])) {
            leave = r;
            best = ratio;
          }
        }
      }
      if (leave == rows) return false;  // unbounded
      pivot(leave, enter);
    }
    fail(ErrorCode::internal, "simplex iteration limit reached");
  }
};

}  // namespace

LpResult simplex_max(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                     const std::vector<double>& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  Tableau tab{m, n + m, std::vector<std::vector<double>>(m + 1, std::vector<double>(n + m + 1, 0.0)),
              std::vector<std::size_t>(m)};
  for (std::size_t r = 0; r < m; ++r) {
    const double sign = b[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab.t[r][j] = sign * A[r][j];
    tab.t[r][n + r] = 1.0;
    tab.rhs(r) = sign * b[r];
    tab.basis[r] = n + r;
  }
  // Phase one: minimise the sum of artificials.
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j <= n + m; ++j) {
      if (j >= n && j < n + m) continue;
      tab.t[m][j] -= tab.t[r][j];
    }
  }
  tab.optimise(n + m);
  LpResult out;
  out.infeasibility = -tab.t[m][n + m];
  if (out.infeasibility > 1e-11) return out;

  // Drive remaining artificials out of the basis where possible.
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis[r] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(tab.t[r][j]) > kPivotEps) {
        tab.pivot(r, j);
        break;
      }
    }
  }
  // Phase two with artificial columns frozen.
  std::fill(tab.t[m].begin(), tab.t[m].end(), 0.0);
  for (std::size_t j = 0; j < n; ++j) tab.t[m][j] = -c[j];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t bj = tab.basis[r];
    if (bj >= n) continue;
    const double cost = tab.t[m][bj];
    if (cost == 0.0) continue;
    for (std::size_t j = 0; j <= n + m; ++j) tab.t[m][j] -= cost * tab.t[r][j];
  }
  if (!tab.optimise(n)) return out;
  out.x.assign(n, 0.0);
  double negative = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis[r] >= n) continue;
    negative = std::max(negative, -tab.rhs(r));
    out.x[tab.basis[r]] = std::max(0.0, tab.rhs(r));
  }
  // Pivots on nearly parallel columns can lose the constraints; such a
  // solution is reported as infeasible rather than trusted.
  double violation = negative;
  for (std::size_t r = 0; r < m; ++r) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += A[r][j] * out.x[j];
    violation = std::max(violation, std::abs(lhs - b[r]));
  }
  if (violation > kCheckTolerance) {
    out.infeasibility = violation;
    out.x.clear();
    return out;
  }
  out.feasible = true;
  out.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) out.objective += c[j] * out.x[j];
  return out;
}

}  // namespace phistab

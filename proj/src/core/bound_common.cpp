#include <algorithm>
#include <cmath>

#include "bound_common.hpp"

namespace phistab {

double SZDistribution::residual() const {
  double worst = 0.0;
  double mass_low = 0.0;
  double mass_high = 0.0;
  double mean = 0.0;
  double energy = 0.0;
  const double s_low = -a;
  for (const SZAtom& atom : atoms) {
    worst = std::max(worst, -atom.probability);
    const bool low = std::abs(atom.s - s_low) <= 1e-15;
    const bool high = std::abs(atom.s - (1.0 - a)) <= 1e-15;
    if (!low && !high) worst = std::max(worst, 1.0);
    (low ? mass_low : mass_high) += atom.probability;
    mean += atom.probability * atom.z;
    energy += atom.probability * (atom.z * atom.z - atom.s * atom.z);
  }
  worst = std::max(worst, std::abs(mass_low - (1.0 - a)));
  worst = std::max(worst, std::abs(mass_high - a));
  worst = std::max(worst, std::abs(mean));
  worst = std::max(worst, energy);
  return worst;
}

double SZDistribution::objective(const PhiSpec& spec, double rho) const {
  double total = 0.0;
  for (const SZAtom& atom : atoms) {
    if (atom.probability == 0.0) continue;
    total += atom.probability * spec(std::clamp(a + rho * atom.z, 0.0, 1.0));
  }
  return total;
}

const char* to_string(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::gamma_bar:
      return "gamma-bar";
    case BoundKind::gamma_hat:
      return "gamma-hat";
    case BoundKind::lambda2:
      return "lambda2";
    case BoundKind::gamma_tilde:
      return "gamma-tilde";
    case BoundKind::upsilon:
      return "upsilon";
    case BoundKind::lambda_generic:
      return "lambda-generic";
  }
  return "unknown";
}

std::optional<BoundKind> parse_bound_kind(const std::string& name) {
  for (BoundKind kind : {BoundKind::gamma_bar, BoundKind::gamma_hat, BoundKind::lambda2, BoundKind::gamma_tilde,
                         BoundKind::upsilon, BoundKind::lambda_generic}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

std::optional<std::string> regime_violation(BoundKind kind, const PhiSpec& spec) {
  const DerivativeShape shape = spec.derivative_shape();
  switch (kind) {
    case BoundKind::gamma_bar:
    case BoundKind::upsilon:
      if (!spec.symmetric()) return std::string("requires a symmetric Phi (--sym)");
      if (shape != DerivativeShape::concave)
        return std::string("requires Phi' strictly concave on (0, 1/2]; it is ") + to_string(shape);
      return std::nullopt;
    case BoundKind::gamma_hat:
    case BoundKind::lambda2:
      if (!spec.symmetric()) return std::string("requires a symmetric Phi (--sym)");
      if (shape != DerivativeShape::convex)
        return std::string("requires Phi' strictly convex on (0, 1/2]; it is ") + to_string(shape);
      return std::nullopt;
    case BoundKind::gamma_tilde:
      if (spec.symmetric()) return std::string("requires an asymmetric Phi (Phi' monotone-shaped on (0, 1))");
      if (shape == DerivativeShape::linear)
        return std::string("requires Phi' strictly concave (or strictly convex, via reflection) on (0, 1)");
      return std::nullopt;
    case BoundKind::lambda_generic:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace phistab

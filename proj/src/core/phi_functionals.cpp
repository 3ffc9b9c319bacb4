#include "phi_functionals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace phistab {

double ln_alpha(double t, double alpha) {
  require(t > 0.0 && std::isfinite(t), ErrorCode::domain, "ln_alpha requires t > 0");
  if (alpha == 1.0) return std::log(t);
  const double k = alpha - 1.0;
  return std::expm1(k * std::log(t)) / k;
}

PhiSpec::PhiSpec(double alpha, bool symmetric, PhiFamily family)
    : alpha_(alpha), symmetric_(symmetric), family_(family) {
  require(std::isfinite(alpha) && alpha >= kMinAlpha && alpha <= kMaxAlpha, ErrorCode::domain,
          "alpha must lie in [1, 16]");
  require(family != PhiFamily::power || alpha > 1.0, ErrorCode::domain,
          "power family t^alpha requires alpha > 1 for strict convexity");
}

double PhiSpec::base(double t) const noexcept {
  if (family_ == PhiFamily::power) return t <= 0.0 ? 0.0 : std::pow(t, alpha_);
  if (t <= 0.0 || t == 1.0) return 0.0;
  const double lt = std::log(t);
  if (alpha_ == 1.0) return t * lt;
  const double k = alpha_ - 1.0;
  return t * std::expm1(k * lt) / k;
}

double PhiSpec::base_prime(double t) const noexcept {
  if (family_ == PhiFamily::power) return alpha_ * std::pow(t, alpha_ - 1.0);
  if (alpha_ == 1.0) return std::log(t) + 1.0;
  // d/dt (t^alpha - t)/(alpha - 1)
  return (alpha_ * std::pow(t, alpha_ - 1.0) - 1.0) / (alpha_ - 1.0);
}

double PhiSpec::operator()(double t) const noexcept {
  const double u = reflected_ ? 1.0 - t : t;
  if (symmetric_) return base(u) + base(1.0 - u);
  return base(u);
}

double PhiSpec::phi(double t) const {
  require(t >= 0.0 && t <= 1.0, ErrorCode::domain, "Phi argument must lie in [0, 1]");
  return (*this)(t);
}

double PhiSpec::phi_prime(double t) const {
  require(t > 0.0 && t < 1.0, ErrorCode::domain, "Phi' argument must lie in (0, 1)");
  const double sign = reflected_ ? -1.0 : 1.0;
  const double u = reflected_ ? 1.0 - t : t;
  if (symmetric_) return sign * (base_prime(u) - base_prime(1.0 - u));
  return sign * base_prime(u);
}

PhiSpec PhiSpec::reflect() const {
  PhiSpec out = *this;
  if (!symmetric_) out.reflected_ = !reflected_;
  return out;
}

DerivativeShape PhiSpec::derivative_shape() const noexcept {
  // Sign of Phi''' decides; Phi''' of t^alpha carries the factor (alpha - 2).
  DerivativeShape shape;
  if (alpha_ == 1.0 && family_ == PhiFamily::tsallis) {
    shape = DerivativeShape::concave;
  } else if (!symmetric_) {
    shape = alpha_ < 2.0 ? DerivativeShape::concave
            : alpha_ > 2.0 ? DerivativeShape::convex
                           : DerivativeShape::linear;
  } else {
    // Phi''' ~ (alpha - 2)(t^(alpha-3) - (1-t)^(alpha-3)) on (0, 1/2).
    if (alpha_ == 2.0 || alpha_ == 3.0)
      shape = DerivativeShape::linear;
    else if (alpha_ > 2.0 && alpha_ < 3.0)
      shape = DerivativeShape::convex;
    else
      shape = DerivativeShape::concave;
  }
  if (reflected_ && shape != DerivativeShape::linear) {
    shape = shape == DerivativeShape::concave ? DerivativeShape::convex : DerivativeShape::concave;
  }
  return shape;
}

std::string PhiSpec::describe() const {
  std::ostringstream out;
  out.precision(17);
  if (family_ == PhiFamily::power)
    out << "power(alpha=" << alpha_ << ")";
  else
    out << "tsallis(alpha=" << alpha_ << ")";
  if (symmetric_) out << ",symmetric";
  if (reflected_) out << ",reflected";
  return out.str();
}

const char* to_string(DerivativeShape shape) noexcept {
  switch (shape) {
    case DerivativeShape::concave:
      return "concave";
    case DerivativeShape::convex:
      return "convex";
    case DerivativeShape::linear:
      return "linear";
  }
  return "unknown";
}

double phi_stability(const FourierSpectrum& spectrum, const PhiSpec& spec, double rho) {
  const std::vector<double> smoothed = noise_smoothed(spectrum, rho);
  double total = 0.0;
  for (double v : smoothed) total += spec(std::clamp(v, 0.0, 1.0));
  return total / static_cast<double>(smoothed.size());
}

double phi_stability(const BooleanFunction& f, const PhiSpec& spec, double rho) {
  return phi_stability(wht(f), spec, rho);
}

double dictator_stability(const PhiSpec& spec, double rho) {
  check_rho(rho);
  return 0.5 * spec(0.5 * (1.0 + rho)) + 0.5 * spec(0.5 * (1.0 - rho));
}

double phi_mutual_information(const BooleanFunction& f, const PhiSpec& spec, double rho) {
  const FourierSpectrum spectrum = wht(f);
  return phi_stability(spectrum, spec, rho) - spec(spectrum.coeffs[0]);
}

double phi_entropy(std::span<const Atom> distribution, const PhiSpec& spec) {
  require(!distribution.empty(), ErrorCode::invalid_argument, "empty distribution");
  double mass = 0.0;
  double mean = 0.0;
  double expected = 0.0;
  for (const Atom& atom : distribution) {
    require(atom.probability >= 0.0, ErrorCode::invalid_argument, "negative probability");
    require(atom.value >= 0.0 && atom.value <= 1.0, ErrorCode::domain, "values must lie in [0, 1]");
    mass += atom.probability;
    mean += atom.probability * atom.value;
    expected += atom.probability * spec(atom.value);
  }
  require(std::abs(mass - 1.0) <= 1e-12, ErrorCode::invalid_argument, "probabilities must sum to 1");
  return expected - spec(std::clamp(mean, 0.0, 1.0));
}

}  // namespace phistab

#pragma once

#include <span>
#include <string>

#include "cube_fourier.hpp"

namespace phistab {

// tsallis: Phi(t) = t ln_alpha(t). power: Phi(t) = t^alpha (alpha > 1).
enum class PhiFamily { tsallis, power };

// Shape of Phi' on (0, 1/2] for symmetric Phi, on (0, 1) otherwise.
enum class DerivativeShape { concave, convex, linear };

class PhiSpec {
 public:
  static constexpr double kMinAlpha = 1.0;
  static constexpr double kMaxAlpha = 16.0;

  PhiSpec(double alpha, bool symmetric, PhiFamily family = PhiFamily::tsallis);

  double alpha() const noexcept { return alpha_; }
  bool symmetric() const noexcept { return symmetric_; }
  PhiFamily family() const noexcept { return family_; }
  bool reflected() const noexcept { return reflected_; }

  double phi(double t) const;
  double phi_prime(double t) const;
  // Evaluates without domain checks; t must lie in [0, 1].
  double operator()(double t) const noexcept;

  // t -> Phi(1 - t).
  PhiSpec reflect() const;
  DerivativeShape derivative_shape() const noexcept;
  std::string describe() const;

 private:
  double base(double t) const noexcept;
  double base_prime(double t) const noexcept;

  double alpha_;
  bool symmetric_;
  PhiFamily family_;
  bool reflected_ = false;
};

double ln_alpha(double t, double alpha);

double phi_stability(const BooleanFunction& f, const PhiSpec& spec, double rho);
double phi_stability(const FourierSpectrum& spectrum, const PhiSpec& spec, double rho);
double dictator_stability(const PhiSpec& spec, double rho);
double phi_mutual_information(const BooleanFunction& f, const PhiSpec& spec, double rho);

struct Atom {
  double value;
  double probability;
};
// E[Phi(V)] - Phi(E[V]) for a finitely supported V in [0, 1].
double phi_entropy(std::span<const Atom> distribution, const PhiSpec& spec);

const char* to_string(DerivativeShape shape) noexcept;

}  // namespace phistab

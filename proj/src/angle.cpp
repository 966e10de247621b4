#include "cwg/angle.hpp"

#include <cmath>

namespace cwg {

double wrap_angle(double theta) noexcept {
  if (theta > -kPi && theta <= kPi) return theta;
  if (!std::isfinite(theta)) return theta;
  double r = std::remainder(theta, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  if (r > kPi) r -= kTwoPi;
  return r;
}

double angle_difference(double a, double b) noexcept { return wrap_angle(a - b); }

std::complex<double> unit_phasor(double theta) noexcept {
  if (theta == 0.0) return {1.0, 0.0};
  if (theta == kPi || theta == -kPi) return {-1.0, 0.0};
  if (theta == kPi / 2) return {0.0, 1.0};
  if (theta == -kPi / 2) return {0.0, -1.0};
  return {std::cos(theta), std::sin(theta)};
}

std::complex<double> polar_weight(double modulus, double theta) noexcept {
  return modulus * unit_phasor(theta);
}

}  // namespace cwg

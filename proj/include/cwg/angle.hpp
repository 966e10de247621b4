#pragma once

#include <complex>
#include <numbers>

namespace cwg {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Default tolerance, in radians, for every angle comparison in the library.
inline constexpr double kDefaultAngleTolerance = 1e-9;

/// Maps an angle into (-pi, pi]. Angles already in range come back bit-identical.
double wrap_angle(double theta) noexcept;

/// wrap_angle(a - b): the signed circular distance from b to a.
double angle_difference(double a, double b) noexcept;

/// 1∠theta. Exact for the quarter turns 0, ±pi/2 and pi.
std::complex<double> unit_phasor(double theta) noexcept;

/// modulus∠theta, built on unit_phasor.
std::complex<double> polar_weight(double modulus, double theta) noexcept;

}  // namespace cwg

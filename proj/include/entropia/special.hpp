#pragma once

#include <cmath>
#include <numbers>

namespace entropia {

/// Volume of the Euclidean unit ball in R^n.
inline double unit_ball_volume(int n) {
  return std::exp(0.5 * n * std::log(std::numbers::pi) - std::lgamma(0.5 * n + 1.0));
}

inline double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace entropia

#pragma once

// Polynomial smoothsteps and the C^∞ exponential blend, templated on the
// scalar so they evaluate on doubles, Dual numbers and Jets alike.

#include <cmath>

#include "entropia/dual.hpp"

namespace entropia {

/// Degree-7 smoothstep: 0 for t ≤ 0, 1 for t ≥ 1, first three derivatives
/// vanish at both ends.
template <class T> T smoothstep7(const T& t) {
  if (t <= 0.0) return T(0.0);
  if (t >= 1.0) return T(1.0);
  const T t2 = t * t;
  const T t4 = t2 * t2;
  return t4 * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
}

template <class T> T smoothstep7_d(const T& t) {
  if (t <= 0.0 || t >= 1.0) return T(0.0);
  const T t3 = t * t * t;
  return 140.0 * t3 * (1.0 - t) * (1.0 - t) * (1.0 - t);
}

/// Degree-5 smoothstep (C²).
template <class T> T smoothstep5(const T& t) {
  if (t <= 0.0) return T(0.0);
  if (t >= 1.0) return T(1.0);
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

/// e^{−1/t} for t > 0, else 0.
template <class T> T flat_exp(const T& t) {
  using std::exp;
  if (t <= 0.0) return T(0.0);
  return exp(-1.0 / t);
}

/// C^∞ transition: 0 for t ≤ 0, 1 for t ≥ 1, flat at both ends.
template <class T> T smooth_transition(const T& t) {
  if (t <= 0.0) return T(0.0);
  if (t >= 1.0) return T(1.0);
  const T a = flat_exp(t);
  const T b = flat_exp(1.0 - t);
  return a / (a + b);
}

}  // namespace entropia

#pragma once

// Forward-mode automatic differentiation. Templating a formula on its scalar
// type and evaluating it on Dual<N> yields exact partial derivatives, which is
// how the Reeb-field and flow Jacobians are obtained without finite
// differences.

#include <array>
#include <cmath>
#include <cstddef>

namespace entropia {

template <std::size_t N>
struct Dual {
  double v = 0.0;
  std::array<double, N> d{};

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value) {}  // NOLINT(google-explicit-constructor)

  static Dual variable(double value, std::size_t i) {
    Dual x(value);
    x.d[i] = 1.0;
    return x;
  }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (std::size_t i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (std::size_t i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (std::size_t i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const double inv = 1.0 / o.v;
    for (std::size_t i = 0; i < N; ++i) d[i] = (d[i] - v * inv * o.d[i]) * inv;
    v *= inv;
    return *this;
  }
};

template <std::size_t N> Dual<N> operator+(Dual<N> a, const Dual<N>& b) { return a += b; }
template <std::size_t N> Dual<N> operator-(Dual<N> a, const Dual<N>& b) { return a -= b; }
template <std::size_t N> Dual<N> operator*(Dual<N> a, const Dual<N>& b) { return a *= b; }
template <std::size_t N> Dual<N> operator/(Dual<N> a, const Dual<N>& b) { return a /= b; }
template <std::size_t N> Dual<N> operator+(Dual<N> a, double b) { a.v += b; return a; }
template <std::size_t N> Dual<N> operator+(double b, Dual<N> a) { a.v += b; return a; }
template <std::size_t N> Dual<N> operator-(Dual<N> a, double b) { a.v -= b; return a; }
template <std::size_t N> Dual<N> operator-(double b, const Dual<N>& a) { return Dual<N>(b) - a; }
template <std::size_t N> Dual<N> operator*(Dual<N> a, double b) {
  a.v *= b;
  for (auto& x : a.d) x *= b;
  return a;
}
template <std::size_t N> Dual<N> operator*(double b, Dual<N> a) { return a * b; }
template <std::size_t N> Dual<N> operator/(Dual<N> a, double b) { return a * (1.0 / b); }
template <std::size_t N> Dual<N> operator/(double b, const Dual<N>& a) { return Dual<N>(b) / a; }
template <std::size_t N> Dual<N> operator-(Dual<N> a) { return a * -1.0; }

template <std::size_t N> bool operator<(const Dual<N>& a, const Dual<N>& b) { return a.v < b.v; }
template <std::size_t N> bool operator>(const Dual<N>& a, const Dual<N>& b) { return a.v > b.v; }
template <std::size_t N> bool operator<=(const Dual<N>& a, const Dual<N>& b) { return a.v <= b.v; }
template <std::size_t N> bool operator>=(const Dual<N>& a, const Dual<N>& b) { return a.v >= b.v; }
template <std::size_t N> bool operator<(const Dual<N>& a, double b) { return a.v < b; }
template <std::size_t N> bool operator>(const Dual<N>& a, double b) { return a.v > b; }
template <std::size_t N> bool operator<=(const Dual<N>& a, double b) { return a.v <= b; }
template <std::size_t N> bool operator>=(const Dual<N>& a, double b) { return a.v >= b; }

namespace detail {
template <std::size_t N>
Dual<N> chain(const Dual<N>& a, double value, double slope) {
  Dual<N> r(value);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = slope * a.d[i];
  return r;
}
}  // namespace detail

template <std::size_t N> Dual<N> exp(const Dual<N>& a) {
  const double e = std::exp(a.v);
  return detail::chain(a, e, e);
}
template <std::size_t N> Dual<N> log(const Dual<N>& a) { return detail::chain(a, std::log(a.v), 1.0 / a.v); }
template <std::size_t N> Dual<N> sqrt(const Dual<N>& a) {
  const double s = std::sqrt(a.v);
  return detail::chain(a, s, 0.5 / s);
}
template <std::size_t N> Dual<N> sin(const Dual<N>& a) { return detail::chain(a, std::sin(a.v), std::cos(a.v)); }
template <std::size_t N> Dual<N> cos(const Dual<N>& a) { return detail::chain(a, std::cos(a.v), -std::sin(a.v)); }

/// Value-only reduction modulo `period`; derivatives pass through unchanged.
template <std::size_t N> Dual<N> wrap(Dual<N> a, double period) {
  a.v -= period * std::floor(a.v / period);
  return a;
}
inline double wrap(double a, double period) { return a - period * std::floor(a / period); }


/// Univariate second-order jet: value, first and second derivative.
struct Jet {
  double v = 0.0;
  double d = 0.0;
  double dd = 0.0;

  constexpr Jet() = default;
  constexpr Jet(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
  constexpr Jet(double value, double d1, double d2) : v(value), d(d1), dd(d2) {}
  static constexpr Jet variable(double value) { return Jet(value, 1.0, 0.0); }
};

inline Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
inline Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }
inline Jet operator-(const Jet& a) { return {-a.v, -a.d, -a.dd}; }
inline Jet operator*(const Jet& a, const Jet& b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd};
}
inline Jet operator/(const Jet& a, const Jet& b) {
  const double q = a.v / b.v;
  const double qd = (a.d - q * b.d) / b.v;
  const double qdd = (a.dd - 2.0 * qd * b.d - q * b.dd) / b.v;
  return {q, qd, qdd};
}
inline Jet operator+(const Jet& a, double b) { return {a.v + b, a.d, a.dd}; }
inline Jet operator+(double b, const Jet& a) { return a + b; }
inline Jet operator-(const Jet& a, double b) { return {a.v - b, a.d, a.dd}; }
inline Jet operator-(double b, const Jet& a) { return {b - a.v, -a.d, -a.dd}; }
inline Jet operator*(const Jet& a, double b) { return {a.v * b, a.d * b, a.dd * b}; }
inline Jet operator*(double b, const Jet& a) { return a * b; }
inline Jet operator/(const Jet& a, double b) { return a * (1.0 / b); }
inline Jet operator/(double b, const Jet& a) { return Jet(b) / a; }
inline bool operator<(const Jet& a, double b) { return a.v < b; }
inline bool operator>(const Jet& a, double b) { return a.v > b; }
inline bool operator<=(const Jet& a, double b) { return a.v <= b; }
inline bool operator>=(const Jet& a, double b) { return a.v >= b; }
inline Jet exp(const Jet& a) {
  const double e = std::exp(a.v);
  return {e, e * a.d, e * (a.dd + a.d * a.d)};
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.v; }
template <std::size_t N> double value_of(const Dual<N>& x) { return x.v; }

}  // namespace entropia

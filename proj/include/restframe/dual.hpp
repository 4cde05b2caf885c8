#pragma once

/**
 * @file dual.hpp
 * @brief Forward-mode dual numbers, a + b·ε with ε² = 0.
 *
 * Only the operations needed by the generator formulas are provided
 * (field arithmetic and sqrt). The derivative part of sqrt is non-finite at a
 * zero radicand; callers detect that and fall back to finite differences.
 */

#include <cmath>
#include <ostream>

namespace restframe {

struct Dual {
  double v{0.0};  // value
  double d{0.0};  // derivative part

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value) {}  // NOLINT: implicit lift of constants
  constexpr Dual(double value, double deriv) : v(value), d(deriv) {}

  static constexpr Dual variable(double x) { return {x, 1.0}; }
  static constexpr Dual constant(double x) { return {x, 0.0}; }

  constexpr Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  constexpr Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  constexpr Dual& operator*=(const Dual& o) {
    d = d * o.v + v * o.d;
    v *= o.v;
    return *this;
  }
  constexpr Dual& operator/=(const Dual& o) {
    d = (d * o.v - v * o.d) / (o.v * o.v);
    v /= o.v;
    return *this;
  }

  friend constexpr Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend constexpr Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend constexpr Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend constexpr Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend constexpr Dual operator-(const Dual& a) { return {-a.v, -a.d}; }

  friend constexpr bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
  friend constexpr bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }

  friend std::ostream& operator<<(std::ostream& os, const Dual& a) {
    return os << a.v << " + " << a.d << "e";
  }
};

inline Dual sqrt(const Dual& a) {
  const double s = std::sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }

}  // namespace restframe

#pragma once

/**
 * @file vec.hpp
 * @brief Euclidean 3-vectors and Minkowski 4-vectors.
 *
 * Vec3T is templated on the scalar so that the same generator code runs on
 * plain doubles and on forward-mode dual numbers. All Minkowski products go
 * through minkowski_dot() with signature (+,-,-,-).
 */

#include <array>
#include <cmath>
#include <cstddef>

namespace restframe {

template <class T>
struct Vec3T {
  T x{};
  T y{};
  T z{};

  constexpr T& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr const T& operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3T& operator+=(const Vec3T& o) { x += o.x; y += o.y; z += o.z; return *this; }
  constexpr Vec3T& operator-=(const Vec3T& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  constexpr Vec3T& operator*=(const T& s) { x *= s; y *= s; z *= s; return *this; }

  friend constexpr Vec3T operator+(Vec3T a, const Vec3T& b) { return a += b; }
  friend constexpr Vec3T operator-(Vec3T a, const Vec3T& b) { return a -= b; }
  friend constexpr Vec3T operator-(const Vec3T& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3T operator*(Vec3T a, const T& s) { return a *= s; }
  friend constexpr Vec3T operator*(const T& s, Vec3T a) { return a *= s; }
  friend constexpr Vec3T operator/(const Vec3T& a, const T& s) { return {a.x / s, a.y / s, a.z / s}; }

  friend constexpr bool operator==(const Vec3T&, const Vec3T&) = default;
};

using Vec3 = Vec3T<double>;

template <class T>
constexpr T dot(const Vec3T<T>& a, const Vec3T<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class T>
constexpr Vec3T<T> cross(const Vec3T<T>& a, const Vec3T<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <class T>
T norm2(const Vec3T<T>& a) { return dot(a, a); }

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline bool is_finite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// Contravariant 4-vector (t; x, y, z) in natural units.
struct FourVector {
  double t{0.0};
  Vec3 s{};

  friend FourVector operator+(const FourVector& a, const FourVector& b) { return {a.t + b.t, a.s + b.s}; }
  friend FourVector operator-(const FourVector& a, const FourVector& b) { return {a.t - b.t, a.s - b.s}; }
  friend FourVector operator*(double k, const FourVector& a) { return {k * a.t, k * a.s}; }
  friend bool operator==(const FourVector&, const FourVector&) = default;
};

/// Minkowski product with signature (+,-,-,-).
inline double minkowski_dot(const FourVector& a, const FourVector& b) {
  return a.t * b.t - dot(a.s, b.s);
}

}  // namespace restframe

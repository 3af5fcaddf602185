#pragma once

/**
 * @file algebra.hpp
 * @brief Arithmetic in the three-dimensional commutative algebra C[rho]/(rho^3).
 *
 * Every element is written u = a + b*rho + c*rho^2 with complex a, b, c.
 * Multiplication is the truncated polynomial product, so the algebra is also
 * the ring of second-order complex jets: evaluating a holomorphic F at
 * xi + rho gives F(xi) + F'(xi) rho + F''(xi)/2 rho^2.
 *
 * The scalar part a is the value of the multiplicative functional f. Its
 * kernel, the radical {b*rho + c*rho^2}, is exactly the set of
 * non-invertible elements.
 */

#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "mono3/error.hpp"

namespace mono3 {

using Complex = std::complex<double>;

/// Smallest |a| accepted by inverse() and resolvent().
inline constexpr double kInvertibilityFloor = 1e-9;

struct A3 {
  Complex a{};  ///< coefficient of 1
  Complex b{};  ///< coefficient of rho
  Complex c{};  ///< coefficient of rho^2

  A3& operator+=(const A3& v) {
    a += v.a;
    b += v.b;
    c += v.c;
    return *this;
  }
  A3& operator-=(const A3& v) {
    a -= v.a;
    b -= v.b;
    c -= v.c;
    return *this;
  }
  A3& operator*=(const A3& v) {
    // rho^3 = 0 drops every product of total degree > 2.
    const Complex nc = a * v.c + v.a * c + b * v.b;
    const Complex nb = a * v.b + v.a * b;
    a *= v.a;
    b = nb;
    c = nc;
    return *this;
  }
  A3& operator*=(Complex s) {
    a *= s;
    b *= s;
    c *= s;
    return *this;
  }
  A3& operator*=(double s) {
    a *= s;
    b *= s;
    c *= s;
    return *this;
  }

  friend bool operator==(const A3&, const A3&) = default;
};

inline const A3 kOne{1.0, 0.0, 0.0};
inline const A3 kRho{0.0, 1.0, 0.0};
inline const A3 kRho2{0.0, 0.0, 1.0};

/// The element s*1.
inline A3 scalar(Complex s) { return {s, 0.0, 0.0}; }

inline A3 operator+(A3 u, const A3& v) { return u += v; }
inline A3 operator-(A3 u, const A3& v) { return u -= v; }
inline A3 operator-(const A3& u) { return {-u.a, -u.b, -u.c}; }
inline A3 operator*(A3 u, const A3& v) { return u *= v; }
inline A3 operator*(A3 u, Complex s) { return u *= s; }
inline A3 operator*(Complex s, A3 u) { return u *= s; }
inline A3 operator*(A3 u, double s) { return u *= s; }
inline A3 operator*(double s, A3 u) { return u *= s; }

/// Multiplication by rho shifts coefficients up one degree.
inline A3 times_rho(const A3& u) { return {0.0, u.a, u.b}; }
inline A3 times_rho2(const A3& u) { return {0.0, 0.0, u.a}; }

/// Euclidean norm sqrt(|a|^2 + |b|^2 + |c|^2).
inline double norm(const A3& u) {
  return std::sqrt(std::norm(u.a) + std::norm(u.b) + std::norm(u.c));
}

/// The multiplicative functional f(a + b rho + c rho^2) = a.
inline Complex scalar_part(const A3& u) { return u.a; }

inline bool is_radical(const A3& u, double tol) { return std::abs(u.a) <= tol; }

inline bool is_finite(const A3& u) {
  return std::isfinite(u.a.real()) && std::isfinite(u.a.imag()) && std::isfinite(u.b.real()) &&
         std::isfinite(u.b.imag()) && std::isfinite(u.c.real()) && std::isfinite(u.c.imag());
}

/// (a + b rho + c rho^2)^-1 = 1/a - (b/a^2) rho + (b^2/a^3 - c/a^2) rho^2.
inline A3 inverse(const A3& u, double floor = kInvertibilityFloor) {
  const double mag = std::abs(u.a);
  if (!(mag >= floor) || mag == 0.0) {
    std::ostringstream os;
    os << "scalar part |a| = " << mag << " is below the invertibility floor " << floor;
    throw Error(Errc::non_invertible, os.str());
  }
  const Complex r = 1.0 / u.a;
  const Complex r2 = r * r;
  return {r, -u.b * r2, u.b * u.b * r2 * r - u.c * r2};
}

/// (t - z)^-1 for complex t, written out with d = t - a:
/// 1/d + b/d^2 rho + (c/d^2 + b^2/d^3) rho^2.
inline A3 resolvent(Complex t, const A3& z, double floor = kInvertibilityFloor) {
  const Complex d = t - z.a;
  const double mag = std::abs(d);
  if (!(mag >= floor) || mag == 0.0) {
    std::ostringstream os;
    os << "|t - a| = " << mag << " lies over the singular fiber (floor " << floor << ")";
    throw Error(Errc::non_invertible, os.str());
  }
  const Complex r = 1.0 / d;
  const Complex r2 = r * r;
  return {r, z.b * r2, z.c * r2 + z.b * z.b * r2 * r};
}

inline std::string to_string(const A3& u) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << u.a.real() << "," << u.a.imag() << ") + (" << u.b.real() << "," << u.b.imag()
     << ")rho + (" << u.c.real() << "," << u.c.imag() << ")rho^2";
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const A3& u) { return os << to_string(u); }

}  // namespace mono3

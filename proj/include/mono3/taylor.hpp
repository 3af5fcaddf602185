#pragma once

// Truncated power series c_0 + c_1 e + ... + c_{N-1} e^{N-1}, e^N = 0.
// Seeding an expression with xi + e yields the Taylor coefficients
// F^(m)(xi) / m! for m < N.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "mono3/algebra.hpp"
#include "mono3/error.hpp"

namespace mono3 {

template <std::size_t N>
struct Taylor {
  static_assert(N >= 1);
  std::array<Complex, N> c{};

  static Taylor constant(Complex v) {
    Taylor t;
    t.c[0] = v;
    return t;
  }
  static Taylor variable(Complex at) {
    Taylor t;
    t.c[0] = at;
    if constexpr (N > 1) t.c[1] = 1.0;
    return t;
  }

  Taylor& operator+=(const Taylor& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] += o.c[i];
    return *this;
  }
  Taylor& operator-=(const Taylor& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] -= o.c[i];
    return *this;
  }
  friend Taylor operator+(Taylor x, const Taylor& y) { return x += y; }
  friend Taylor operator-(Taylor x, const Taylor& y) { return x -= y; }
  friend Taylor operator-(Taylor x) {
    for (auto& v : x.c) v = -v;
    return x;
  }
  friend Taylor operator*(const Taylor& x, const Taylor& y) {
    Taylor r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; i + j < N; ++j) r.c[i + j] += x.c[i] * y.c[j];
    return r;
  }
  friend Taylor operator*(Complex s, Taylor x) {
    for (auto& v : x.c) v *= s;
    return x;
  }
};

/// Series reciprocal; same floor semantics as inverse(A3).
template <std::size_t N>
Taylor<N> inverse(const Taylor<N>& x, double floor = kInvertibilityFloor) {
  const double mag = std::abs(x.c[0]);
  if (!(mag >= floor) || mag == 0.0)
    throw Error(Errc::non_invertible, "series constant term below the invertibility floor");
  Taylor<N> r;
  r.c[0] = 1.0 / x.c[0];
  for (std::size_t n = 1; n < N; ++n) {
    Complex acc{};
    for (std::size_t j = 1; j <= n; ++j) acc += x.c[j] * r.c[n - j];
    r.c[n] = -acc * r.c[0];
  }
  return r;
}

/// g(a + n) = sum_m g^(m)(a) n^m / m! where derivs[m] = g^(m)(a).
template <std::size_t N>
Taylor<N> lift(const std::array<Complex, N>& derivs, const Taylor<N>& x) {
  Taylor<N> nil = x;
  nil.c[0] = 0.0;
  Taylor<N> result = Taylor<N>::constant(derivs[0]);
  Taylor<N> power = Taylor<N>::constant(1.0);
  double factorial = 1.0;
  for (std::size_t m = 1; m < N; ++m) {
    power = power * nil;
    factorial *= static_cast<double>(m);
    result += (derivs[m] / factorial) * power;
  }
  return result;
}

}  // namespace mono3

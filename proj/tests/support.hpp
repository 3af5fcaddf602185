#pragma once

// Shared generators and independent oracles for the test suites.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "mono3/mono3.hpp"

namespace mono3::test {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Complex complex(double lo, double hi) { return {real(lo, hi), real(lo, hi)}; }
  A3 element(double lo = -10.0, double hi = 10.0) { return {complex(lo, hi), complex(lo, hi), complex(lo, hi)}; }

  /// Element with |a| >= min_abs.
  A3 invertible(double min_abs, double lo = -10.0, double hi = 10.0) {
    A3 u = element(lo, hi);
    while (std::abs(u.a) < min_abs) u.a = complex(lo, hi);
    return u;
  }

  Coords coords(std::size_t k, double lo, double hi) {
    Coords x(k);
    for (double& v : x) v = real(lo, hi);
    return x;
  }

  /// Random basis of E_k; generic, so always valid.
  Subspace subspace(std::size_t k, double scale = 1.0) {
    for (;;) {
      std::vector<A3> e;
      for (std::size_t j = 0; j < k; ++j) e.push_back(element(-scale, scale));
      try {
        return make_subspace(std::move(e));
      } catch (const Error&) {
      }
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Truncated product of coefficient triples, written as a polynomial
/// convolution rather than through A3::operator*.
inline A3 convolve(const A3& u, const A3& v) {
  const std::array<Complex, 3> p{u.a, u.b, u.c};
  const std::array<Complex, 3> q{v.a, v.b, v.c};
  std::array<Complex, 5> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i + j] += p[i] * q[j];
  return {r[0], r[1], r[2]};
}

inline double max_component_gap(const A3& u, const A3& v) {
  return std::max({std::abs(u.a - v.a), std::abs(u.b - v.b), std::abs(u.c - v.c)});
}

/// Central differences of a complex function along the real axis,
/// Richardson-extrapolated once. Accurate to O(h^4).
template <class F>
Complex fd_first(F&& f, Complex z, double h = 1e-3) {
  auto central = [&](double s) { return (f(z + s) - f(z - s)) / (2.0 * s); };
  return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

template <class F>
Complex fd_second(F&& f, Complex z, double h = 1e-3) {
  auto central = [&](double s) { return (f(z + s) - 2.0 * f(z) + f(z - s)) / (s * s); };
  return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

}  // namespace mono3::test

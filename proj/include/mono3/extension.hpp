#pragma once

/**
 * @file extension.hpp
 * @brief Monogenic extension of holomorphic data into the cylinder over D.
 *
 * For zeta = sum x_j e_j write xi = f(zeta) = sum a_j x_j,
 * beta = sum b_j x_j and gamma = sum c_j x_j. The principal extension of a
 * holomorphic F is
 *
 *     Ext(F)(zeta) = F(xi) + beta F'(xi) rho
 *                  + (gamma F'(xi) + beta^2 / 2 F''(xi)) rho^2,
 *
 * which is the nilpotent Taylor expansion of F at zeta and also the value of
 * the Cauchy-type integral (1 / 2 pi i) \oint F(t) (t - zeta)^-1 dt over any
 * contour around xi. A general monogenic function is
 * Phi = Ext(F0) + rho Ext(F1) + rho^2 Ext(F2).
 */

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <variant>

#include "mono3/algebra.hpp"
#include "mono3/error.hpp"
#include "mono3/holo.hpp"
#include "mono3/subspace.hpp"

namespace mono3 {

/// |f(zeta) - center| must not exceed this fraction of the radius.
inline constexpr double kContourMargin = 0.9;
inline constexpr int kDefaultNodes = 64;
inline constexpr int kMinNodes = 8;

/// A circle traversed once counterclockwise, sampled at equally spaced nodes.
struct Contour {
  Complex center{};
  double radius = 1.0;
  int nodes = kDefaultNodes;
};

inline void validate(const Contour& g) {
  if (!(g.radius > 0.0) || !std::isfinite(g.radius))
    throw Error(Errc::invalid_argument, "contour radius must be positive");
  if (g.nodes < kMinNodes)
    throw Error(Errc::invalid_argument, "contour needs at least " + std::to_string(kMinNodes) + " nodes");
}

/// Unit circle around xi with the default node count.
inline Contour default_contour(Complex xi) { return {xi, 1.0, kDefaultNodes}; }

namespace detail {

struct Coefficients {
  Complex xi, beta, gamma;
};

inline Coefficients coefficient_sums(const Subspace& s, std::span<const double> x) {
  require_dim(s, x.size(), "point");
  Coefficients out{};
  for (std::size_t j = 0; j < x.size(); ++j) {
    out.xi += s[j].a * x[j];
    out.beta += s[j].b * x[j];
    out.gamma += s[j].c * x[j];
  }
  return out;
}

inline A3 extend_from_jet(Complex f0, Complex f1, Complex f2, const Coefficients& k) {
  return {f0, k.beta * f1, k.gamma * f1 + k.beta * k.beta / 2.0 * f2};
}

inline void check_margin(const Contour& g, Complex xi) {
  const double offset = std::abs(xi - g.center);
  if (!(offset <= kContourMargin * g.radius)) {
    std::ostringstream os;
    os << "|f(zeta) - center| = " << offset << " exceeds " << kContourMargin << " * radius "
       << g.radius;
    throw Error(Errc::point_too_close_to_contour, os.str());
  }
}

// (1 / 2 pi i) \oint G(t) (t - zeta)^-1 dt by the trapezoidal rule, where
// dt = i (t - c) dtheta turns the sum into a plain average.
template <class Integrand>
A3 contour_average(const Contour& g, const A3& zeta, Integrand&& integrand) {
  validate(g);
  check_margin(g, zeta.a);
  A3 acc{};
  const double step = 2.0 * std::numbers::pi / g.nodes;
  for (int k = 0; k < g.nodes; ++k) {
    const Complex offset = std::polar(g.radius, step * k);
    const Complex t = g.center + offset;
    acc += integrand(t) * resolvent(t, zeta) * offset;
  }
  return acc * (1.0 / g.nodes);
}

}  // namespace detail

/// Closed-form principal extension of F evaluated at the point x of E_k.
inline A3 principal_extension(const HoloFn& f, const Subspace& s, std::span<const double> x) {
  const auto k = detail::coefficient_sums(s, x);
  const Jet j = jet(f, k.xi);
  return detail::extend_from_jet(j.value, j.first, j.second, k);
}

/// Cauchy-type integral of F over the contour; throws PointTooCloseToContour
/// when f(zeta) violates the margin rule.
inline A3 cauchy_extension(const HoloFn& f, const Subspace& s, std::span<const double> x,
                           const Contour& g) {
  const A3 zeta = embed(s, x);
  return detail::contour_average(g, zeta, [&](Complex t) { return scalar(eval_c(f, t)); });
}

/// Phi = Ext(F0) + rho Ext(F1) + rho^2 Ext(F2) on the subspace s.
struct MonogenicFn {
  Subspace space;
  HoloFn f0;
  HoloFn f1{};
  HoloFn f2{};
};

struct ClosedForm {};

/// Contour quadrature; an empty contour means default_contour(f(zeta)).
struct Quadrature {
  std::optional<Contour> contour;
};

using EvalMode = std::variant<ClosedForm, Quadrature>;

inline A3 eval_monogenic(const MonogenicFn& phi, std::span<const double> x, const EvalMode& mode = ClosedForm{}) {
  if (const auto* q = std::get_if<Quadrature>(&mode)) {
    const A3 zeta = embed(phi.space, x);
    const Contour g = q->contour.value_or(default_contour(zeta.a));
    return detail::contour_average(g, zeta, [&](Complex t) {
      A3 v{eval_c(phi.f0, t), 0.0, 0.0};
      if (!phi.f1.is_zero()) v.b = eval_c(phi.f1, t);
      if (!phi.f2.is_zero()) v.c = eval_c(phi.f2, t);
      return v;
    });
  }
  const auto k = detail::coefficient_sums(phi.space, x);
  A3 out = principal_extension(phi.f0, phi.space, x);
  if (!phi.f1.is_zero()) {
    // rho Ext(F1) = F1(xi) rho + beta F1'(xi) rho^2
    const Jet j = jet(phi.f1, k.xi);
    out.b += j.value;
    out.c += k.beta * j.first;
  }
  if (!phi.f2.is_zero()) out.c += eval_c(phi.f2, k.xi);
  return out;
}

/// Phi' = Ext(F0') + rho Ext(F1') + rho^2 Ext(F2'), from third-order series
/// seeded at f(zeta).
inline A3 gateaux_of_extension(const MonogenicFn& phi, std::span<const double> x) {
  const auto k = detail::coefficient_sums(phi.space, x);
  const auto d0 = derivatives<4>(phi.f0, k.xi);
  A3 out = detail::extend_from_jet(d0[1], d0[2], d0[3], k);
  if (!phi.f1.is_zero()) {
    const auto d1 = derivatives<3>(phi.f1, k.xi);
    out.b += d1[1];
    out.c += k.beta * d1[2];
  }
  if (!phi.f2.is_zero()) out.c += derivatives<2>(phi.f2, k.xi)[1];
  return out;
}

}  // namespace mono3

#pragma once

/**
 * @file verify.hpp
 * @brief Numerical checks of differentiability for algebra-valued functions
 * on E_k.
 *
 * None of these prove anything. They measure one-sided difference quotients
 * and report residuals against a scale-aware pass band, so an extension
 * passes and a non-monogenic function (the pathology catalog) fails.
 *
 * The hypotheses of the underlying theorems allow a countable exceptional
 * set of points. Finite sampling cannot see such a set, so grid_verify
 * reports a pass fraction instead of a single verdict.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mono3/algebra.hpp"
#include "mono3/error.hpp"
#include "mono3/extension.hpp"
#include "mono3/holo.hpp"
#include "mono3/subspace.hpp"

namespace mono3 {

inline constexpr double kDefaultStep = 1e-2;
inline constexpr int kDefaultLevels = 6;
inline constexpr double kDefaultTolerance = 1e-4;

/// A function E_k -> A3 known only through point evaluations.
class SampledFn {
 public:
  using Evaluator = std::function<A3(std::span<const double>)>;

  SampledFn(Evaluator eval, std::string tag) : eval_(std::move(eval)), tag_(std::move(tag)) {}

  A3 operator()(std::span<const double> x) const { return eval_(x); }
  const std::string& tag() const { return tag_; }

 private:
  Evaluator eval_;
  std::string tag_;
};

inline SampledFn sampled(const MonogenicFn& phi) {
  std::string tag = "ext:" + phi.f0.str();
  if (!phi.f1.is_zero()) tag += ";f1=" + phi.f1.str();
  if (!phi.f2.is_zero()) tag += ";f2=" + phi.f2.str();
  return SampledFn([phi](std::span<const double> x) { return eval_monogenic(phi, x); }, std::move(tag));
}

/// Negative controls.
///   conj_f:        zeta -> conj(f(zeta)) 1
///   abs_f:         zeta -> |f(zeta)| 1
///   radical_noise: zeta -> Ext(base)(zeta) + |f(zeta)| rho^2
enum class Pathology { conj_f, abs_f, radical_noise };

constexpr std::string_view pathology_name(Pathology p) noexcept {
  switch (p) {
    case Pathology::conj_f: return "conj_f";
    case Pathology::abs_f: return "abs_f";
    case Pathology::radical_noise: return "radical_noise";
  }
  return "?";
}

inline std::optional<Pathology> parse_pathology(std::string_view name) {
  for (Pathology p : {Pathology::conj_f, Pathology::abs_f, Pathology::radical_noise})
    if (name == pathology_name(p)) return p;
  return std::nullopt;
}

inline SampledFn sampled(Pathology kind, const Subspace& s, const HoloFn& base = parse("z")) {
  const std::string tag = "path:" + std::string(pathology_name(kind));
  switch (kind) {
    case Pathology::conj_f:
      return SampledFn([s](std::span<const double> x) { return scalar(std::conj(image(s, x))); }, tag);
    case Pathology::abs_f:
      return SampledFn([s](std::span<const double> x) { return scalar(std::abs(image(s, x))); }, tag);
    case Pathology::radical_noise:
      return SampledFn(
          [s, base](std::span<const double> x) {
            A3 v = principal_extension(base, s, x);
            v.c += std::abs(image(s, x));
            return v;
          },
          tag);
  }
  throw Error(Errc::invalid_argument, "unknown pathology");
}

// ---------------------------------------------------------------------------

struct DirectionalDerivative {
  A3 value;                      ///< Richardson estimate 2 Q(d_last) - Q(d_prev)
  std::vector<A3> quotients;     ///< Q(d_j) = (Phi(p + d_j h) - Phi(p)) / d_j, d_j = d0 2^-j
  std::vector<double> history;   ///< ||Q(d_j) - Q(d_{j-1})||
};

inline Coords shifted(std::span<const double> p, std::span<const double> h, double t) {
  Coords q(p.begin(), p.end());
  for (std::size_t j = 0; j < q.size(); ++j) q[j] += t * h[j];
  return q;
}

/// One-sided Gateaux quotient of phi at p along h (h in E_k coordinates).
/// Throws NoConvergence when the quotient differences grow over the last
/// three levels.
inline DirectionalDerivative directional_derivative(const SampledFn& phi, const Subspace& s,
                                                    std::span<const double> p, std::span<const double> h,
                                                    double delta0 = kDefaultStep, int levels = kDefaultLevels) {
  require_dim(s, p.size(), "point");
  require_dim(s, h.size(), "direction");
  if (!(delta0 > 0.0)) throw Error(Errc::invalid_argument, "initial step must be positive");
  if (levels < 2) throw Error(Errc::invalid_argument, "at least two levels are needed");

  const A3 base = phi(p);
  DirectionalDerivative out;
  double delta = delta0;
  for (int j = 0; j < levels; ++j, delta /= 2.0) {
    const Coords q = shifted(p, h, delta);
    out.quotients.push_back((phi(q) - base) * (1.0 / delta));
    if (j > 0) out.history.push_back(norm(out.quotients[j] - out.quotients[j - 1]));
  }

  const std::size_t n = out.history.size();
  if (n >= 3) {
    const double last = out.history[n - 1];
    const double floor = std::sqrt(std::numeric_limits<double>::epsilon()) * (1.0 + norm(out.quotients.back()));
    if (last > out.history[n - 2] && out.history[n - 2] > out.history[n - 3] && last > floor)
      throw Error(Errc::no_convergence, "difference quotients diverge as the step shrinks");
  }
  const A3& fine = out.quotients[levels - 1];
  const A3& coarse = out.quotients[levels - 2];
  out.value = 2.0 * fine - coarse;
  return out;
}

struct CheckReport {
  A3 phi_star;                                ///< h_1^-1 D_1
  std::vector<double> residuals;              ///< ||D_j - h_j phi_star||
  std::vector<double> leading_residuals;      ///< |f(D_j - h_j phi_star)|
  std::vector<std::vector<double>> history;   ///< per direction quotient differences
  double threshold = 0.0;                     ///< tol (1 + ||phi_star||)
  bool pass = false;

  double max_residual() const {
    return residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
  }
};

/// Checks that one element phi_star satisfies D_j = h_j phi_star for every
/// direction of the set.
inline CheckReport check_kprime(const SampledFn& phi, const Subspace& s, std::span<const double> p,
                                const DirectionSet& d, double tol = kDefaultTolerance,
                                double delta0 = kDefaultStep, int levels = kDefaultLevels) {
  if (const DirectionCheck c = validate_directions(s, d); !c)
    throw Error(Errc::invalid_directions,
                std::string(issue_name(c.issue)) + " (direction " + std::to_string(c.index + 1) + ")");

  CheckReport report;
  std::vector<A3> measured;
  for (const Coords& h : d.h) {
    DirectionalDerivative dd = directional_derivative(phi, s, p, h, delta0, levels);
    measured.push_back(dd.value);
    report.history.push_back(std::move(dd.history));
  }
  report.phi_star = inverse(embed(s, d.h[0])) * measured[0];
  for (std::size_t j = 0; j < d.h.size(); ++j) {
    const A3 gap = measured[j] - embed(s, d.h[j]) * report.phi_star;
    report.residuals.push_back(norm(gap));
    report.leading_residuals.push_back(std::abs(gap.a));
  }
  report.threshold = tol * (1.0 + norm(report.phi_star));
  report.pass = report.max_residual() <= report.threshold;
  return report;
}

/// max over sampled unit directions u of ||Phi(p + d u) - Phi(p) - (d u) Phi'|| / d.
inline double check_lorch(const SampledFn& phi, const Subspace& s, std::span<const double> p,
                          const A3& derivative, int samples, double delta, std::uint64_t seed = 0) {
  require_dim(s, p.size(), "point");
  if (samples < 10) throw Error(Errc::invalid_argument, "at least 10 samples are needed");
  if (!(delta > 0.0)) throw Error(Errc::invalid_argument, "step must be positive");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const A3 base = phi(p);
  const std::size_t k = s.dim();
  double worst = 0.0;
  Coords u(k);
  for (int n = 0; n < samples; ++n) {
    double len = 0.0;
    do {
      len = 0.0;
      for (double& v : u) {
        v = gauss(rng);
        len += v * v;
      }
    } while (len == 0.0);
    len = std::sqrt(len);
    for (double& v : u) v /= len;
    const A3 step = embed(s, u) * delta;
    const A3 remainder = phi(shifted(p, u, delta)) - base - step * derivative;
    worst = std::max(worst, norm(remainder) / delta);
  }
  return worst;
}

/// 7-point Laplacian residuals of the six real components at steps h and h/2.
struct LaplaceResidual {
  double coarse = 0.0;                     ///< residual at h
  double fine = 0.0;                       ///< residual at h/2
  std::array<double, 6> coarse_channels{};  ///< |Lap| of re0, im0, re1, im1, re2, im2 at h
  std::array<double, 6> fine_channels{};

  double ratio() const { return coarse / fine; }
};

namespace detail {

inline std::array<double, 6> channels(const A3& v) {
  return {v.a.real(), v.a.imag(), v.b.real(), v.b.imag(), v.c.real(), v.c.imag()};
}

inline std::array<double, 6> laplacian_channels(const MonogenicFn& phi, std::span<const double> p, double h) {
  const A3 centre = eval_monogenic(phi, p);
  A3 sum = centre * -6.0;
  for (std::size_t j = 0; j < 3; ++j)
    for (double sign : {1.0, -1.0}) {
      Coords q(p.begin(), p.end());
      q[j] += sign * h;
      sum += eval_monogenic(phi, q);
    }
  std::array<double, 6> out = channels(sum * (1.0 / (h * h)));
  for (double& v : out) v = std::abs(v);
  return out;
}

}  // namespace detail

inline LaplaceResidual check_laplace(const MonogenicFn& phi, std::span<const double> p, double h) {
  if (phi.space.dim() != 3)
    throw Error(Errc::dimension_mismatch, "Laplace check needs k = 3, got k = " + std::to_string(phi.space.dim()));
  require_dim(phi.space, p.size(), "point");
  if (!(h > 0.0)) throw Error(Errc::invalid_argument, "step must be positive");
  LaplaceResidual r;
  r.coarse_channels = detail::laplacian_channels(phi, p, h);
  r.fine_channels = detail::laplacian_channels(phi, p, h / 2.0);
  r.coarse = *std::max_element(r.coarse_channels.begin(), r.coarse_channels.end());
  r.fine = *std::max_element(r.fine_channels.begin(), r.fine_channels.end());
  return r;
}

// ---------------------------------------------------------------------------

/// Axis-aligned box in E_k coordinates.
struct Box {
  Coords lo, hi;
};

inline Box cube(std::size_t k, double lo, double hi) { return {Coords(k, lo), Coords(k, hi)}; }

/// n seeded points drawn uniformly from the box.
inline std::vector<Coords> sample_points(const Box& box, std::size_t n, std::uint64_t seed) {
  if (box.lo.size() != box.hi.size()) throw Error(Errc::dimension_mismatch, "box bounds differ in length");
  for (std::size_t j = 0; j < box.lo.size(); ++j)
    if (!(box.lo[j] < box.hi[j])) throw Error(Errc::invalid_argument, "degenerate box");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Coords> pts(n, Coords(box.lo.size()));
  for (Coords& p : pts)
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = box.lo[j] + (box.hi[j] - box.lo[j]) * unit(rng);
  return pts;
}

struct GridSummary {
  std::size_t points = 0;
  std::size_t passed = 0;
  double pass_fraction = 0.0;
  double worst_residual = 0.0;
  Coords worst_point;
  CheckReport worst_report;
};

inline GridSummary grid_verify(const SampledFn& phi, const Subspace& s, const Box& box, std::size_t n_points,
                               const DirectionSet& d, double tol = kDefaultTolerance, std::uint64_t seed = 0) {
  require_dim(s, box.lo.size(), "box");
  GridSummary summary;
  summary.points = n_points;
  bool first = true;
  for (const Coords& p : sample_points(box, n_points, seed)) {
    CheckReport r = check_kprime(phi, s, p, d, tol);
    if (r.pass) ++summary.passed;
    if (first || r.max_residual() > summary.worst_residual) {
      summary.worst_residual = r.max_residual();
      summary.worst_point = p;
      summary.worst_report = std::move(r);
      first = false;
    }
  }
  summary.pass_fraction = n_points ? static_cast<double>(summary.passed) / static_cast<double>(n_points) : 0.0;
  return summary;
}

}  // namespace mono3

#pragma once

/**
 * @file subspace.hpp
 * @brief Real k-dimensional subspaces E_k of the algebra, 2 <= k <= 6.
 *
 * A point of E_k is given by real coordinates x_1..x_k and corresponds to
 * zeta = x_1 e_1 + ... + x_k e_k. A valid subspace is mapped onto the whole
 * complex plane by f, so its intersection with the radical (the plane of
 * non-invertible points) has dimension k - 2.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mono3/algebra.hpp"
#include "mono3/error.hpp"

namespace mono3 {

/// Real coordinates of a point or a direction with respect to e_1..e_k.
using Coords = std::vector<double>;

/// Relative pivot threshold used for every rank decision.
inline constexpr double kRankTolerance = 1e-9;
/// |det(f(h1), f(h2))| must exceed this fraction of |f(h1)| |f(h2)|.
inline constexpr double kCollinearityTolerance = 1e-6;

namespace detail {

using Matrix = std::vector<std::vector<double>>;

struct Echelon {
  Matrix rows;                       // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Gauss-Jordan elimination with partial pivoting. Pivots smaller than
// tol * max|entry| count as zero.
inline Echelon reduce(Matrix m, double tol = kRankTolerance) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  double scale = 0.0;
  for (const auto& r : m)
    for (double v : r) scale = std::max(scale, std::abs(v));
  const double eps = tol * std::max(scale, 1e-300);

  Echelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t best = row;
    for (std::size_t r = row + 1; r < rows; ++r)
      if (std::abs(m[r][col]) > std::abs(m[best][col])) best = r;
    if (std::abs(m[best][col]) <= eps) {
      for (std::size_t r = row; r < rows; ++r) m[r][col] = 0.0;
      continue;
    }
    std::swap(m[row], m[best]);
    const double p = m[row][col];
    for (double& v : m[row]) v /= p;
    m[row][col] = 1.0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == 0.0) continue;
      const double factor = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] -= factor * m[row][c];
      m[r][col] = 0.0;
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rows = std::move(m);
  return out;
}

inline std::size_t rank(Matrix m, double tol = kRankTolerance) {
  if (m.empty()) return 0;
  return reduce(std::move(m), tol).pivots.size();
}

// Basis of {x : m x = 0} read off the reduced echelon form: one vector per
// free column.
inline std::vector<Coords> kernel(const Matrix& m, double tol = kRankTolerance) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  const Echelon ech = reduce(m, tol);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : ech.pivots) is_pivot[p] = true;

  std::vector<Coords> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Coords v(cols, 0.0);
    v[free] = 1.0;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

class Subspace;
Subspace make_subspace(std::vector<A3> basis);

class Subspace {
 public:
  std::size_t dim() const { return basis_.size(); }
  const std::vector<A3>& basis() const { return basis_; }
  const A3& operator[](std::size_t j) const { return basis_[j]; }

  /// k - 2 coordinate vectors spanning the radical plane L = E_k ∩ radical.
  const std::vector<Coords>& radical_basis() const { return radical_basis_; }

 private:
  friend Subspace make_subspace(std::vector<A3> basis);
  Subspace(std::vector<A3> basis, std::vector<Coords> radical)
      : basis_(std::move(basis)), radical_basis_(std::move(radical)) {}

  std::vector<A3> basis_;
  std::vector<Coords> radical_basis_;
};

namespace detail {

// 2 x k real matrix of x -> f(sum x_j e_j).
inline Matrix scalar_map(const std::vector<A3>& e) {
  Matrix m(2, std::vector<double>(e.size()));
  for (std::size_t j = 0; j < e.size(); ++j) {
    m[0][j] = e[j].a.real();
    m[1][j] = e[j].a.imag();
  }
  return m;
}

}  // namespace detail

/// Validates the basis and caches the radical plane.
/// Throws DependentBasis, NotSurjective or DimensionMismatch.
inline Subspace make_subspace(std::vector<A3> basis) {
  const std::size_t k = basis.size();
  if (k < 2 || k > 6)
    throw Error(Errc::dimension_mismatch,
                "subspace needs 2..6 basis vectors, got " + std::to_string(k));
  for (const A3& e : basis)
    if (!is_finite(e)) throw Error(Errc::invalid_argument, "basis vector has non-finite coefficients");

  detail::Matrix full(6, std::vector<double>(k));
  for (std::size_t j = 0; j < k; ++j) {
    const std::array<Complex, 3> coeffs{basis[j].a, basis[j].b, basis[j].c};
    for (std::size_t m = 0; m < 3; ++m) {
      full[2 * m][j] = coeffs[m].real();
      full[2 * m + 1][j] = coeffs[m].imag();
    }
  }
  const detail::Matrix map = detail::scalar_map(basis);
  const std::size_t image_rank = detail::rank(map);
  if (image_rank < 2)
    throw Error(Errc::not_surjective,
                "f maps the subspace onto a set of real dimension " + std::to_string(image_rank));

  const std::size_t r = detail::rank(full);
  if (r < k)
    throw Error(Errc::dependent_basis, "real rank " + std::to_string(r) + " < k = " + std::to_string(k));

  auto radical = detail::kernel(map);
  return Subspace(std::move(basis), std::move(radical));
}

inline void require_dim(const Subspace& s, std::size_t n, std::string_view what) {
  if (n != s.dim())
    throw Error(Errc::dimension_mismatch, std::string(what) + " has " + std::to_string(n) +
                                              " coordinates, subspace has k = " + std::to_string(s.dim()));
}

/// zeta = sum_j x_j e_j.
inline A3 embed(const Subspace& s, std::span<const double> x) {
  require_dim(s, x.size(), "point");
  A3 z{};
  for (std::size_t j = 0; j < x.size(); ++j) {
    z.a += s[j].a * x[j];
    z.b += s[j].b * x[j];
    z.c += s[j].c * x[j];
  }
  return z;
}

/// f(embed(s, x)) = sum_j a_j x_j, computed with the same operation order as embed().
inline Complex image(const Subspace& s, std::span<const double> x) {
  require_dim(s, x.size(), "point");
  Complex xi{};
  for (std::size_t j = 0; j < x.size(); ++j) xi += s[j].a * x[j];
  return xi;
}

/// Harmonic basis e1 = 1, e2 = i + (i b3^2 / 2) rho^2, e3 = b3 rho + c3 rho^2.
/// e1^2 + e2^2 + e3^2 vanishes identically in b3, c3.
inline Subspace harmonic_family(Complex b3, Complex c3) {
  const Complex i{0.0, 1.0};
  return make_subspace({kOne, A3{i, 0.0, i * b3 * b3 / 2.0}, A3{0.0, b3, c3}});
}

inline A3 sum_of_squares(const Subspace& s) {
  A3 acc{};
  for (const A3& e : s.basis()) acc += e * e;
  return acc;
}

inline bool is_harmonic(const Subspace& s, double tol) {
  if (s.dim() != 3)
    throw Error(Errc::dimension_mismatch, "harmonic bases are defined for k = 3, got k = " + std::to_string(s.dim()));
  return norm(sum_of_squares(s)) <= tol;
}

// ---------------------------------------------------------------------------
// Direction sets

/// h_1, h_2 with non-collinear f-images followed by k - 2 vectors spanning
/// the radical plane, all in E_k coordinates.
struct DirectionSet {
  std::vector<Coords> h;
};

enum class DirectionIssue {
  none,
  wrong_count,
  wrong_length,
  collinear_images,
  not_in_radical,
  radical_rank_deficient,
};

constexpr std::string_view issue_name(DirectionIssue issue) noexcept {
  switch (issue) {
    case DirectionIssue::none: return "ok";
    case DirectionIssue::wrong_count: return "wrong_count";
    case DirectionIssue::wrong_length: return "wrong_length";
    case DirectionIssue::collinear_images: return "collinear_images";
    case DirectionIssue::not_in_radical: return "not_in_radical";
    case DirectionIssue::radical_rank_deficient: return "radical_rank_deficient";
  }
  return "unknown";
}

struct DirectionCheck {
  DirectionIssue issue = DirectionIssue::none;
  std::size_t index = 0;  // offending direction, when meaningful

  bool valid() const { return issue == DirectionIssue::none; }
  explicit operator bool() const { return valid(); }
};

inline DirectionCheck validate_directions(const Subspace& s, const DirectionSet& d) {
  const std::size_t k = s.dim();
  if (d.h.size() != k) return {DirectionIssue::wrong_count, d.h.size()};
  for (std::size_t j = 0; j < k; ++j)
    if (d.h[j].size() != k) return {DirectionIssue::wrong_length, j};

  const Complex t1 = image(s, d.h[0]);
  const Complex t2 = image(s, d.h[1]);
  const double det = t1.real() * t2.imag() - t1.imag() * t2.real();
  const double scale = std::abs(t1) * std::abs(t2);
  if (scale == 0.0 || !(std::abs(det) >= kCollinearityTolerance * scale))
    return {DirectionIssue::collinear_images, 1};

  detail::Matrix radical;
  for (std::size_t j = 2; j < k; ++j) {
    const Coords& h = d.h[j];
    double magnitude = 0.0;
    double length = 0.0;
    for (std::size_t m = 0; m < k; ++m) {
      magnitude += std::abs(s[m].a) * std::abs(h[m]);
      length += h[m] * h[m];
    }
    if (length == 0.0) return {DirectionIssue::radical_rank_deficient, j};
    if (std::abs(image(s, h)) > kRankTolerance * magnitude) return {DirectionIssue::not_in_radical, j};
    length = std::sqrt(length);
    Coords unit(h);
    for (double& v : unit) v /= length;
    radical.push_back(std::move(unit));
  }
  if (detail::rank(radical) < k - 2) return {DirectionIssue::radical_rank_deficient, k - 1};
  return {};
}

/// Minimum-norm preimages of 1 and i under x -> f(embed(s, x)), followed by
/// the cached radical basis. Always passes validate_directions.
inline DirectionSet default_directions(const Subspace& s) {
  const detail::Matrix m = detail::scalar_map(s.basis());
  const std::size_t k = s.dim();
  // Gram matrix G = M M^T, x = M^T G^-1 t.
  double g00 = 0, g01 = 0, g11 = 0;
  for (std::size_t j = 0; j < k; ++j) {
    g00 += m[0][j] * m[0][j];
    g01 += m[0][j] * m[1][j];
    g11 += m[1][j] * m[1][j];
  }
  const double det = g00 * g11 - g01 * g01;
  auto preimage = [&](double t0, double t1) {
    const double y0 = (g11 * t0 - g01 * t1) / det;
    const double y1 = (-g01 * t0 + g00 * t1) / det;
    Coords x(k);
    for (std::size_t j = 0; j < k; ++j) x[j] = m[0][j] * y0 + m[1][j] * y1;
    return x;
  };
  DirectionSet d;
  d.h.push_back(preimage(1.0, 0.0));
  d.h.push_back(preimage(0.0, 1.0));
  for (const Coords& v : s.radical_basis()) d.h.push_back(v);
  return d;
}

}  // namespace mono3

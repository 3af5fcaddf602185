#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "mono3/extension.hpp"
#include "support.hpp"

using namespace mono3;
using mono3::test::Gen;
using mono3::test::max_component_gap;

namespace {

const Complex I{0.0, 1.0};

const std::vector<std::string> kCatalog{"z^2",        "z^3 - 2*z + i", "exp(z)", "sin(z)", "cos(2*z)",
                                        "log(z + 3)", "1/(z - 4)",     "exp(z)*z^2 + 1/(z + 5)"};

Errc error_code(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::invalid_argument;
}

// Contour whose center sits at a fraction q of the radius away from xi.
Contour offset_contour(Complex xi, double q, double angle, int nodes) {
  return {xi - std::polar(q, angle), 1.0, nodes};
}

}  // namespace

TEST(PrincipalExtension, IdentityReturnsZeta) {
  Gen g(41);
  for (std::size_t k = 2; k <= 6; ++k) {
    const Subspace s = g.subspace(k, 2.0);
    const Coords p = g.coords(k, -1, 1);
    EXPECT_LE(max_component_gap(principal_extension(parse("z"), s, p), embed(s, p)), 1e-15);
  }
}

TEST(PrincipalExtension, SquareOnHarmonicBasis) {
  const Subspace s = harmonic_family(1.0, 0.0);
  EXPECT_EQ(principal_extension(parse("z^2"), s, Coords{1, 0, 1}), (A3{1.0, 2.0, 1.0}));
}

TEST(PrincipalExtension, PlaneCollapsesToComplexAnalysis) {
  const Subspace s = make_subspace({kOne, scalar(I)});
  Gen g(42);
  for (int n = 0; n < 20; ++n) {
    const double x = g.real(-2, 2), y = g.real(-2, 2);
    const A3 v = principal_extension(parse("z^2"), s, Coords{x, y});
    EXPECT_LE(std::abs(v.a - Complex(x, y) * Complex(x, y)), 1e-14);
    EXPECT_EQ(v.b, Complex{});
    EXPECT_EQ(v.c, Complex{});
  }
}

TEST(PrincipalExtension, EqualsAlgebraEvaluationAtZeta) {
  Gen g(43);
  for (std::size_t k = 2; k <= 6; ++k) {
    const Subspace s = g.subspace(k, 1.0);
    for (const auto& text : kCatalog) {
      const HoloFn f = parse(text);
      for (int n = 0; n < 10; ++n) {
        const Coords p = g.coords(k, -0.5, 0.5);
        const A3 closed = principal_extension(f, s, p);
        const A3 direct = eval_a3(f, embed(s, p));
        EXPECT_LE(norm(closed - direct), 1e-10 * (1 + norm(direct))) << text << " k=" << k;
      }
    }
  }
}

TEST(CauchyExtension, ConstantOne) {
  const Subspace s = harmonic_family(1.0, 0.0);
  const Coords p{0.2, -0.4, 1.5};
  const A3 v = cauchy_extension(parse("1"), s, p, default_contour(image(s, p)));
  EXPECT_LE(max_component_gap(v, kOne), 1e-14);
}

TEST(CauchyExtension, IdentityReproducesZeta) {
  Gen g(44);
  const Subspace s = g.subspace(4, 1.0);
  const Coords p = g.coords(4, -1, 1);
  const A3 v = cauchy_extension(parse("z"), s, p, default_contour(image(s, p)));
  EXPECT_LE(max_component_gap(v, embed(s, p)), 1e-10);
}

TEST(CauchyExtension, SquareOnShiftedContour) {
  const Subspace s = harmonic_family(1.0, 0.0);
  const A3 v = cauchy_extension(parse("z^2"), s, Coords{1, 0, 1}, Contour{1.0, 1.0, 64});
  EXPECT_LE(max_component_gap(v, A3{1.0, 2.0, 1.0}), 1e-10);
}

TEST(CauchyExtension, MarginRule) {
  const Subspace s = harmonic_family(1.0, 0.0);
  const Coords p{1, 0, 0};
  EXPECT_NO_THROW(cauchy_extension(parse("z"), s, p, Contour{0.1, 1.0, 64}));
  EXPECT_EQ(error_code([&] { cauchy_extension(parse("z"), s, p, Contour{0.05, 1.0, 64}); }),
            Errc::point_too_close_to_contour);
  EXPECT_EQ(error_code([&] { cauchy_extension(parse("z"), s, p, Contour{5.0, 1.0, 64}); }),
            Errc::point_too_close_to_contour);
}

TEST(CauchyExtension, RejectsDegenerateContours) {
  const Subspace s = harmonic_family(1.0, 0.0);
  const Coords p{0, 0, 0};
  EXPECT_EQ(error_code([&] { cauchy_extension(parse("z"), s, p, Contour{0.0, 0.0, 64}); }), Errc::invalid_argument);
  EXPECT_EQ(error_code([&] { cauchy_extension(parse("z"), s, p, Contour{0.0, 1.0, 4}); }), Errc::invalid_argument);
}

TEST(CauchyExtension, AgreesWithClosedForm) {
  Gen g(45);
  const Subspace s = harmonic_family(1.0, 0.0);
  for (const auto& text : kCatalog) {
    const HoloFn f = parse(text);
    for (int n = 0; n < 10; ++n) {
      const Coords p = g.coords(3, -0.5, 0.5);
      const Complex xi = image(s, p);
      const Contour c = offset_contour(xi, g.real(0.0, 0.6), g.real(0, 2 * std::numbers::pi), 64);
      const A3 closed = principal_extension(f, s, p);
      EXPECT_LE(norm(cauchy_extension(f, s, p, c) - closed), 1e-8 * (1 + norm(closed))) << text;
    }
  }
}

TEST(EvalMonogenic, ComponentExamples) {
  const Subspace s = harmonic_family(1.0, 0.0);
  const Coords p{1, 0, 1};  // zeta = 1 + rho

  const MonogenicFn phi{s, parse("z"), parse("1"), parse("0")};
  EXPECT_EQ(eval_monogenic(phi, p), (A3{1.0, 2.0, 0.0}));

  Gen g(46);
  const MonogenicFn only_f2{s, parse("0"), parse("0"), parse("z")};
  for (int n = 0; n < 10; ++n) {
    const Coords q = g.coords(3, -1, 1);
    EXPECT_EQ(eval_monogenic(only_f2, q), (A3{0.0, 0.0, image(s, q)}));
  }

  const MonogenicFn e{s, parse("exp(z)")};
  const Coords q{0.1, 0.2, 0.3};
  EXPECT_EQ(eval_monogenic(e, q), principal_extension(parse("exp(z)"), s, q));
}

TEST(EvalMonogenic, ClosedFormIsSumOfShiftedExtensions) {
  Gen g(47);
  for (std::size_t k : {2u, 3u, 5u}) {
    const Subspace s = g.subspace(k, 1.0);
    const MonogenicFn phi{s, parse("sin(z)"), parse("z^3"), parse("exp(z)")};
    for (int n = 0; n < 10; ++n) {
      const Coords p = g.coords(k, -1, 1);
      const A3 want = principal_extension(phi.f0, s, p) + kRho * principal_extension(phi.f1, s, p) +
                      kRho2 * principal_extension(phi.f2, s, p);
      EXPECT_LE(norm(eval_monogenic(phi, p) - want), 1e-13 * (1 + norm(want)));
    }
  }
}

TEST(EvalMonogenic, QuadratureAgreesAndConvergesSpectrally) {
  Gen g(48);
  const Subspace s = harmonic_family(1.0, 0.0);
  const MonogenicFn phi{s, parse("z^3 + exp(z)"), parse("z^2 - 1"), parse("exp(2*z)")};
  double worst32 = 0.0, worst64 = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Coords p = g.coords(3, -1, 1);
    const Complex xi = image(s, p);
    const double q = g.real(0.3, 0.6), angle = g.real(0, 2 * std::numbers::pi);
    const A3 closed = eval_monogenic(phi, p);
    const double e32 = norm(eval_monogenic(phi, p, Quadrature{offset_contour(xi, q, angle, 32)}) - closed);
    const double e64 = norm(eval_monogenic(phi, p, Quadrature{offset_contour(xi, q, angle, 64)}) - closed);
    EXPECT_LE(e64, 1e-8);
    worst32 = std::max(worst32, e32);
    worst64 = std::max(worst64, e64);
  }
  EXPECT_GE(worst32 / worst64, 10.0) << worst32 << " vs " << worst64;
}

TEST(EvalMonogenic, DefaultQuadratureContourIsCenteredAtImage) {
  const Subspace s = harmonic_family(1.0, 0.0);
  const MonogenicFn phi{s, parse("z^2"), parse("z"), parse("1")};
  const Coords p{0.4, -0.2, 0.7};
  EXPECT_LE(norm(eval_monogenic(phi, p, Quadrature{}) - eval_monogenic(phi, p)), 1e-12);
}

TEST(EvalMonogenic, ScalarPartIsConstantAlongRadicalFibers) {
  Gen g(49);
  const std::vector<Subspace> spaces{harmonic_family(1.0, 0.0), make_subspace({kOne, scalar(I), kRho, kRho2}),
                                     make_subspace({kOne + kRho2, I * kOne + kRho, 2.0 * kRho, kRho + I * kRho2})};
  for (const Subspace& s : spaces) {
    const MonogenicFn phi{s, parse("exp(z) + z^2"), parse("sin(z)"), parse("z")};
    for (int n = 0; n < 20; ++n) {
      const Coords p = g.coords(s.dim(), -1, 1);
      const Complex base = eval_monogenic(phi, p).a;
      for (const Coords& v : s.radical_basis()) {
        const double t = g.real(-5, 5);
        Coords q = p;
        for (std::size_t j = 0; j < q.size(); ++j) q[j] += t * v[j];
        EXPECT_EQ(eval_monogenic(phi, q).a, base);
      }
    }
  }
}

TEST(Gateaux, Examples) {
  const Subspace s = harmonic_family(1.0, 0.0);
  const Coords p{1, 0, 1};
  EXPECT_EQ(gateaux_of_extension(MonogenicFn{s, parse("z^2")}, p), (A3{2.0, 2.0, 0.0}));
  EXPECT_EQ(gateaux_of_extension(MonogenicFn{s, parse("5")}, p), A3{});
  const Coords q{0.3, -0.1, 0.8};
  EXPECT_LE(norm(gateaux_of_extension(MonogenicFn{s, parse("exp(z)")}, q) -
                 principal_extension(parse("exp(z)"), s, q)),
            1e-14);
}

TEST(Gateaux, MatchesCentralDifferencesAlongEveryDirection) {
  // Phi(p + d h) - Phi(p - d h) ~ 2 d h Phi', checked for invertible and
  // radical directions alike.
  Gen g(50);
  for (std::size_t k : {2u, 3u, 4u}) {
    const Subspace s = g.subspace(k, 1.0);
    const MonogenicFn phi{s, parse("exp(z)*z"), parse("z^3"), parse("cos(z)")};
    for (int n = 0; n < 10; ++n) {
      const Coords p = g.coords(k, -0.5, 0.5);
      const A3 deriv = gateaux_of_extension(phi, p);
      for (int m = 0; m < 3; ++m) {
        const Coords h = g.coords(k, -1, 1);
        auto central = [&](double d) {
          Coords a = p, b = p;
          for (std::size_t j = 0; j < k; ++j) {
            a[j] += d * h[j];
            b[j] -= d * h[j];
          }
          return (eval_monogenic(phi, a) - eval_monogenic(phi, b)) * (0.5 / d);
        };
        const A3 fd = (4.0 * central(5e-4) - central(1e-3)) * (1.0 / 3.0);
        const A3 want = embed(s, h) * deriv;
        EXPECT_LE(norm(fd - want), 1e-7 * (1 + norm(want)));
      }
    }
  }
}

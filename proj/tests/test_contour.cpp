#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "qb2x/contour.hpp"
#include "qb2x/errors.hpp"
#include "qb2x/geometry.hpp"

using namespace qb2x;
using cd = std::complex<double>;

namespace {

constexpr double pi = std::numbers::pi;
const cd I(0.0, 1.0);
const cd w0(0.0, -1.0 / 3.0);

cd integrate(const Contour& c, auto f) {
  cd s = 0.0;
  for (const auto& n : c.nodes()) s += f(n.z) * n.weight;
  return s;
}

// Straight-segment integral int_{-1}^{1} g(x) dx by composite Simpson's rule; an
// independent check for smooth g away from its singularities.
cd segment_simpson(auto g, int n = 200000) {
  const double h = 2.0 / n;
  cd s = g(-1.0) + g(1.0);
  for (int j = 1; j < n; ++j) s += (j % 2 ? 4.0 : 2.0) * g(-1.0 + j * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int n : {1, 2, 5, 16}) {
    const auto& r = gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += r.weights[j] * std::pow(r.nodes[j], k);
      CHECK(std::abs(s - (k % 2 ? 0.0 : 2.0 / (k + 1))) < 1e-14);
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), InvalidArgument);
}

TEST_CASE("upper semicircle geometry") {
  const auto c = build_upper_contour();
  CHECK(c.kind() == ContourKind::UpperSemicircle);
  CHECK(c.panel_count() == 16);
  CHECK(std::abs(c.start() - 1.0) < 1e-15);
  CHECK(std::abs(c.end() + 1.0) < 1e-15);
  CHECK(std::abs(integrate(c, [](cd) { return cd(1.0); }) - (-2.0)) < 1e-14);
  CHECK(std::abs(c.arc_length() - pi) < 1e-13);
}

TEST_CASE("upper semicircle closes the segment for e^{iz}/(z - w0)") {
  const auto c = build_upper_contour();
  const cd on_arc = integrate(c, [](cd z) { return std::exp(I * z) / (z - w0); });
  const cd on_segment = segment_simpson([](double x) { return std::exp(I * x) / (x - w0); });
  CHECK(std::abs(on_arc + on_segment) < 1e-12);
}

TEST_CASE("lower rectangle geometry") {
  const auto c = build_lower_contour(45.0);
  CHECK(c.kind() == ContourKind::LowerRectangle);
  CHECK(std::abs(c.arc_length() - 92.0) < 1e-12);
  CHECK(std::abs(c.start() - 1.0) < 1e-15);
  CHECK(std::abs(c.end() + 1.0) < 1e-15);
  // the bottom side sees at most e^{-45} of the slowest negative mode
  const auto& bottom = c.segments()[1];
  for (double t = 0.0; t <= 1.0; t += 0.125) CHECK(std::abs(std::exp(-I * bottom.point(t))) <= std::exp(-45.0) * 1.0001);
  // the smallest panels sit at +-1
  const auto& side = c.segments()[0];
  CHECK((side.panels.front().second - side.panels.front().first) * 45.0 == doctest::Approx(1e-3));
  CHECK_THROWS_AS(build_lower_contour(0.0), InvalidArgument);
}

TEST_CASE("segment plus lower rectangle encircles -i/3 clockwise") {
  const auto c = build_lower_contour(45.0);
  const cd contour_part = integrate(c, [](cd z) { return 1.0 / (z - w0); });
  const cd segment_part = std::log(1.0 - w0) - std::log(-1.0 - w0);
  CHECK(std::abs(contour_part + segment_part - (-2.0 * pi * I)) < 1e-12);
}

TEST_CASE("p = 0, k = 0 upper moment against the closed-form segment integral") {
  const cd m = contour_moment(build_upper_contour(), BoundaryCurve(), 0, 0, w0);
  const cd segment = std::log(1.0 - w0) - std::log(-1.0 - w0);
  CHECK(std::abs(m + segment) < 1e-13);
}

TEST_CASE("p = 1, k = 0 upper moment against a much finer independent rule") {
  const cd m = contour_moment(build_upper_contour(), BoundaryCurve(), 1, 0, w0);
  // 10x the nodes: 160 panels of a 16-point rule on the parametrization e^{i t}
  const auto& r = gauss_legendre(16);
  cd ref = 0.0;
  const int panels = 160;
  for (int k = 0; k < panels; ++k) {
    const double a = pi * k / panels, b = pi * (k + 1) / panels;
    for (int j = 0; j < 16; ++j) {
      const double t = 0.5 * (a + b) + 0.5 * (b - a) * r.nodes[j];
      const cd z = std::exp(I * t);
      ref += r.weights[j] * 0.5 * (b - a) * std::exp(I * z) / (z - w0) * I * z;
    }
  }
  CHECK(std::abs(m - ref) < 1e-12);
  double bound = 0.0;
  for (const auto& n : build_upper_contour().nodes())
    bound += std::abs(std::exp(I * n.z) / (n.z - w0) * n.weight);
  CHECK(std::abs(m) <= bound);
}

TEST_CASE("frequency sign must match the contour") {
  CHECK_THROWS_AS(contour_moment(build_upper_contour(), BoundaryCurve(), -1, 0, w0), WrongContourForFrequency);
  CHECK_THROWS_AS(contour_moment(build_lower_contour(), BoundaryCurve(), 0, 0, w0), WrongContourForFrequency);
}

TEST_CASE("closed-loop identity for curved boundaries and p >= 0") {
  const BoundaryCurve c(RealPolynomial::monomial({0.0, 0.0, -0.1, 0.0, -0.1}));
  for (int p : {0, 3, 10}) {
    for (int k : {0, 4}) {
      const cd m = contour_moment(build_upper_contour(), c, p, k, w0);
      const cd seg = segment_simpson([&](double x) {
        const cd D = c.lift(x) - w0;
        return std::exp(I * double(p) * x) / std::pow(D, k + 1);
      });
      CHECK(std::abs(m + seg) < 1e-12);
    }
  }
}

TEST_CASE("refinement changes converged moments by at most 1e-14 relative") {
  const BoundaryCurve c(RealPolynomial::monomial({0.0, 0.0, -0.1}));
  for (const auto& [contour, pmin, pmax] : {std::tuple{build_upper_contour(), 0, 30},
                                            std::tuple{build_lower_contour(4.0), -30, -1}}) {
    const auto t = contour_moments(contour, c, pmin, pmax, 40, w0);
    Contour fine = contour;
    for (int d = 0; d <= t.doublings; ++d) fine = fine.refined();
    const auto t2 = contour_moments(fine, c, pmin, pmax, 40, w0);
    double worst = 0.0;
    for (int p = pmin; p <= pmax; ++p)
      for (int k = 0; k <= 40; ++k)
        worst = std::max(worst, std::abs(t(p, k) - t2(p, k)) / (1.0 + std::abs(t2(p, k))));
    CHECK(worst <= 1e-14);
  }
}

TEST_CASE("the bottom side of the rectangle contributes at most e^{-L} relative") {
  const double L = 45.0;
  const auto c = build_lower_contour(L);
  const auto& bottom = c.segments()[1];
  const auto& rule = gauss_legendre(16);
  for (int p : {-1, -5}) {
    for (int k : {0, 10}) {
      const cd total = contour_moment(c, BoundaryCurve(), p, k, w0);
      cd part = 0.0;
      for (const auto& [lo, hi] : bottom.panels)
        for (int j = 0; j < 16; ++j) {
          const double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.nodes[j];
          const cd z = bottom.point(t);
          part += std::exp(I * double(p) * z) / std::pow(z - w0, k + 1) * bottom.derivative(t) *
                  (0.5 * (hi - lo) * rule.weights[j]);
        }
      CHECK(std::abs(part) <= std::exp(-L) * std::abs(total));
    }
  }
}

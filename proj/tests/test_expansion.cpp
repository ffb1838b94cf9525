#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qb2x/errors.hpp"
#include "qb2x/expansion.hpp"
#include "qb2x/oracle.hpp"

using namespace qb2x;
using cd = std::complex<double>;

namespace {

constexpr double pi = std::numbers::pi;
const cd I(0.0, 1.0);
const LeafBox kBox{{0.0, -1.0 / 3.0}, 1.0 / 3.0, 1.0 / 3.0};
const auto kQuadraticRho = RealPolynomial::chebyshev({1.0, 0.5, 0.25});

BoundaryCurve quadratic() { return BoundaryCurve(RealPolynomial::monomial({0.0, 0.0, -0.1})); }

RepOptions with_K(int K) {
  RepOptions o;
  o.K = K;
  return o;
}

std::vector<cd> targets(const BoundaryCurve& c, int n) {
  std::vector<cd> pts;
  for (int i = 0; i < n; ++i) {
    const double x = kBox.x_min() + (kBox.x_max() - kBox.x_min()) * i / (n - 1);
    const double top = std::min(kBox.y_max(), c.s(x) - 1e-3);
    for (int j = 0; j < n; ++j) pts.emplace_back(x, kBox.y_min() + (top - kBox.y_min()) * j / (n - 1));
  }
  return pts;
}

// int_{-1}^{1} f(x) / (x - w) dx for a monomial f, by synthetic division.
cd cauchy_straight(const std::vector<double>& a, cd w) {
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<cd> q(std::max(n, 1), 0.0);
  cd carry = 0.0;
  for (int k = n; k >= 1; --k) q[k - 1] = carry = carry * w + a[k];
  const cd rem = carry * w + a[0];
  cd s = rem * (std::log(1.0 - w) - std::log(-1.0 - w));
  for (int k = 0; k < n; k += 2) s += 2.0 * q[k] / double(k + 1);
  return s;
}

double grid_error(const Qb2xRepresentation& rep, PotentialKind kind, const RealFunction& rho, int n) {
  double worst = 0.0;
  for (const cd& w : targets(rep.curve, n))
    worst = std::max(worst, std::abs(eval_rep(rep, w) - oracle_adaptive(kind, rho, rep.curve, w, 1e-13).value));
  return worst;
}

RealFunction fn(const RealPolynomial& p) {
  return [p](double x) { return p(x); };
}

double laplacian(const Qb2xRepresentation& rep, cd w, double h) {
  return (eval_rep(rep, w + h) + eval_rep(rep, w - h) + eval_rep(rep, w + I * h) + eval_rep(rep, w - I * h) -
          4.0 * eval_rep(rep, w)) /
         (h * h);
}

}  // namespace

TEST_CASE("zero density gives a zero representation") {
  FourierExtension zero(30);
  const auto ir = integral_rep(zero, BoundaryCurve(), kBox);
  for (const cd& c : ir.local_coeffs) CHECK(c == 0.0);
  for (const cd& c : ir.pw_weights) CHECK(c == 0.0);

  const auto dlp = build_dlp(RealPolynomial(), quadratic(), kBox, 30, with_K(20));
  const auto slp = build_slp(RealPolynomial(), quadratic(), kBox, 30, with_K(20));
  for (const cd& w : targets(quadratic(), 5)) {
    CHECK(eval_rep(dlp, w) == 0.0);
    CHECK(eval_rep(slp, w) == 0.0);
  }
}

TEST_CASE("constant density on the straight line reproduces the closed-form log") {
  FourierExtension one(0);
  one[0] = 1.0;
  RepOptions o;
  o.eps = 1e-13;
  const auto ir = integral_rep(one, BoundaryCurve(), kBox, o);
  CHECK(ir.pw_weights.empty());
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(-1.0 / 3.0, 1.0 / 3.0), uy(-2.0 / 3.0, -1e-3);
  for (int i = 0; i < 50; ++i) {
    const cd w(ux(rng), uy(rng));
    const cd J = eval_integral(ir, BoundaryCurve(), kBox.center, w);
    CHECK(std::abs(J - (std::log(1.0 - w) - std::log(-1.0 - w))) <= 1e-13);
  }
}

TEST_CASE("quadratic density on the straight line, eps = 1e-13, 51 x 51 grid") {
  const auto ext = fit_fourier_extension([](double x) { return (2 * x * x + 2 * x + 3) / 4; }, 30);
  RepOptions o;
  o.eps = 1e-13;
  const auto ir = integral_rep(ext, BoundaryCurve(), kBox, o);
  double worst = 0.0;
  for (const cd& w : targets(BoundaryCurve(), 51))
    worst = std::max(worst, std::abs(eval_integral(ir, BoundaryCurve(), kBox.center, w) -
                                     cauchy_straight({0.75, 0.5, 0.5}, w)));
  CHECK(worst <= 1e-13);
}

TEST_CASE("DLP of rho = 1 at the box center") {
  const auto rep = build_dlp(RealPolynomial::monomial({1.0}), BoundaryCurve(), kBox, 30, with_K(40));
  CHECK(std::abs(eval_rep(rep, kBox.center) - (pi - 2.0 * std::atan(1.0 / 3.0)) / (2.0 * pi)) <= 1e-13);
}

TEST_CASE("DLP, straight line, cos x with P = 1 and K = 40") {
  const RealFunction rho = [](double x) { return std::cos(x); };
  const auto rep = build_dlp(rho, BoundaryCurve(), kBox, 1, with_K(40));
  CHECK(rep.K == 40);
  CHECK(grid_error(rep, PotentialKind::DLP, rho, 21) <= 1e-13);
}

TEST_CASE("DLP, quadratic curve, K = 40") {
  const auto rep = build_dlp(kQuadraticRho, quadratic(), kBox, 30, with_K(40));
  CHECK(grid_error(rep, PotentialKind::DLP, fn(kQuadraticRho), 21) <= 1e-11);
}

TEST_CASE("SLP, straight line, K = 40") {
  const auto rep = build_slp(kQuadraticRho, BoundaryCurve(), kBox, 30, with_K(40));
  CHECK(grid_error(rep, PotentialKind::SLP, fn(kQuadraticRho), 21) <= 1e-12);
}

TEST_CASE("SLP, quadratic curve, K = 36") {
  const auto rep = build_slp(kQuadraticRho, quadratic(), kBox, 30, with_K(36));
  CHECK(grid_error(rep, PotentialKind::SLP, fn(kQuadraticRho), 21) <= 1e-11);
}

TEST_CASE("straight-line DLP K sweep") {
  const double bound[] = {1e-3, 1e-6, 1e-9, 1e-12};
  const int Ks[] = {9, 18, 27, 36};
  double previous = 1.0;
  for (int i = 0; i < 4; ++i) {
    const auto rep = build_dlp(kQuadraticRho, BoundaryCurve(), kBox, 30, with_K(Ks[i]));
    double worst = 0.0;
    for (const cd& w : targets(BoundaryCurve(), 21))
      worst = std::max(worst, std::abs(eval_rep(rep, w) - oracle_dlp_straight(kQuadraticRho, w).value));
    CHECK(worst <= bound[i]);
    CHECK(worst <= 2.0 * previous);  // non-increasing in K, with slack at the floor
    previous = worst;
  }
}

TEST_CASE("sign conventions of the DLP constituents") {
  // With s = 0 only rho contributes: DLP = Re(i J(rho)) / 2pi = -Im J / 2pi.
  const auto rep = build_dlp(kQuadraticRho, BoundaryCurve(), kBox, 30, with_K(40));
  REQUIRE(rep.constituents.size() == 2);
  CHECK(rep.constituents[0].name == "s'rho");
  CHECK(rep.constituents[0].factor == cd(-1.0, 0.0));
  CHECK(rep.constituents[1].factor == I);
  const cd w(0.1, -0.2);
  const cd J = eval_integral(rep.constituents[1].rep, rep.curve, rep.w0, w);
  CHECK(std::abs(J - cauchy_straight({0.75, 0.5, 0.5}, w)) <= 1e-13);
  CHECK(std::abs(eval_rep(rep, w) + J.imag() / (2.0 * pi)) <= 1e-15);

  // On a curve, s'rho enters with a minus sign: Re(-J(s'rho)).
  const auto curved = build_dlp(kQuadraticRho, quadratic(), kBox, 30, with_K(40));
  const cd J1 = eval_integral(curved.constituents[0].rep, curved.curve, curved.w0, w);
  const cd J2 = eval_integral(curved.constituents[1].rep, curved.curve, curved.w0, w);
  CHECK(std::abs(eval_rep(curved, w) - (-J1.real() - J2.imag()) / (2.0 * pi)) <= 1e-15);
}

TEST_CASE("sign conventions of the SLP constituents") {
  // SLP = Re(B - J(F) - i J(s'F)) / 2pi, B = F(1) log(w - z_1) - F(-1) log(w - z_-1).
  const auto c = quadratic();
  const auto rep = build_slp(kQuadraticRho, c, kBox, 30, with_K(40));
  REQUIRE(rep.constituents.size() == 2);
  CHECK(rep.constituents[0].factor == cd(-1.0, 0.0));
  CHECK(rep.constituents[1].factor == -I);
  const cd w(-0.2, -0.5);
  const auto& F = rep.constituents[0].density;
  const double B = F(1.0) * std::log(std::abs(w - c.lift(1.0))) - F(-1.0) * std::log(std::abs(w - c.lift(-1.0)));
  CHECK(std::abs(evaluate_local(rep.boundary_coeffs, rep.w0, w).real() - B) <= 1e-14);
  const cd J1 = eval_integral(rep.constituents[0].rep, c, rep.w0, w);
  const cd J2 = eval_integral(rep.constituents[1].rep, c, rep.w0, w);
  CHECK(std::abs(eval_rep(rep, w) - (B - J1.real() + J2.imag()) / (2.0 * pi)) <= 1e-14);
}

TEST_CASE("merged coefficients equal the sum of constituents") {
  const auto dlp = build_dlp(kQuadraticRho, quadratic(), kBox, 30, with_K(30));
  const auto slp = build_slp(kQuadraticRho, quadratic(), kBox, 30, with_K(30));
  for (const cd& w : targets(quadratic(), 7)) {
    CHECK(std::abs(eval_rep(dlp, w) - eval_constituents(dlp, w)) <= 1e-15);
    CHECK(std::abs(eval_rep(slp, w) - eval_constituents(slp, w)) <= 1e-15);
  }
}

TEST_CASE("representations are harmonic") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-0.3, 0.3), uy(0.0, 1.0);
  const BoundaryCurve quartic(RealPolynomial::monomial({0.0, 0.0, -0.1, 0.0, -0.1}));
  const Qb2xRepresentation reps[] = {
      build_dlp(kQuadraticRho, BoundaryCurve(), kBox, 30, with_K(40)),
      build_dlp(kQuadraticRho, quartic, kBox, 30, with_K(50)),
      build_slp(kQuadraticRho, quadratic(), kBox, 30, with_K(36)),
      build_slp(RealFunction([](double x) { return std::exp(std::cos(x)); }), BoundaryCurve(), kBox, 20,
                with_K(40))};
  for (const auto& rep : reps) {
    for (int i = 0; i < 20; ++i) {
      const double x = ux(rng);
      const double y = -0.63 + uy(rng) * (rep.curve.s(x) - 0.02 + 0.63);
      CHECK(std::abs(laplacian(rep, {x, y}, 1e-4)) <= 1e-5);
    }
  }
}

TEST_CASE("evaluation does not depend on the upper contour radius") {
  for (const auto& c : {BoundaryCurve(), quadratic()}) {
    RepOptions wide = with_K(40);
    wide.upper_radius = 1.2;
    const auto a = build_dlp(kQuadraticRho, c, kBox, 30, with_K(40));
    const auto b = build_dlp(kQuadraticRho, c, kBox, 30, wide);
    CHECK(b.r_max_upper <= a.r_max_upper);
    for (const cd& w : targets(c, 11)) CHECK(std::abs(eval_rep(a, w) - eval_rep(b, w)) <= 1e-12);
  }
}

TEST_CASE("plane-wave part reduces to the straight-line residue formula") {
  const auto rep = build_dlp(kQuadraticRho, BoundaryCurve(), kBox, 30, with_K(40));
  const auto& f2 = rep.constituents[1].density;
  const auto& pw = rep.constituents[1].rep.pw_weights;
  for (const cd& w : targets(BoundaryCurve(), 6)) {
    cd expected = 0.0, got = 0.0;
    for (int p = -30; p <= -1; ++p) {
      expected += -2.0 * pi * I * f2[p] * std::exp(I * double(p) * w);
      got += pw[p + 30] * std::exp(I * double(p) * find_root_near(rep.curve, w));
    }
    CHECK(std::abs(got - expected) <= 1e-13);
  }
}

TEST_CASE("coefficients are finite and bounded by the contour integral estimate") {
  const auto rep = build_dlp(kQuadraticRho, quadratic(), kBox, 30, with_K(40));
  const auto g = prepare_geometry(rep.curve, kBox);
  double min_d = 1e300, length = g.upper.arc_length() + g.lower.arc_length();
  for (const auto* c : {&g.upper, &g.lower})
    for (const cd& z : c->sample(4096)) min_d = std::min(min_d, std::abs(rep.curve.lift(z) - rep.w0));
  for (const auto& part : rep.constituents) {
    const double wsum = part.density.weight_sum();
    for (int k = 0; k <= rep.K; ++k) {
      const cd c = part.rep.local_coeffs[k];
      CHECK(std::isfinite(c.real()));
      CHECK(std::isfinite(c.imag()));
      CHECK(std::abs(c) <= wsum * std::pow(1.0 / min_d, k + 1) * length);
    }
  }
}

TEST_CASE("automatic K uses the worse r_max") {
  RepOptions o;
  o.eps = 1e-12;
  const auto rep = build_dlp(kQuadraticRho, BoundaryCurve(), kBox, 30, o);
  double wsum = 0.0;
  for (const auto& part : rep.constituents) wsum = std::max(wsum, part.density.weight_sum());
  CHECK(rep.K == select_K(std::max(rep.r_max_upper, rep.r_max_lower), wsum, 1e-12));
  CHECK(rep.target_eps == 1e-12);
  CHECK(rep.scale == doctest::Approx(1.0 / (2.0 * pi)));
}

TEST_CASE("lower depth is clamped above a second root under the segment") {
  const auto g = prepare_geometry(quadratic(), kBox);
  CHECK(g.depth_L < 5.0);
  CHECK(g.depth_L > 4.0);
  CHECK(prepare_geometry(BoundaryCurve(), kBox).depth_L == 45.0);
  const BoundaryCurve quartic(RealPolynomial::monomial({0.0, 0.0, -0.1, 0.0, -0.1}));
  CHECK(prepare_geometry(quartic, kBox).depth_L == 45.0);
}

TEST_CASE("geometry errors propagate") {
  // s = -0.9 x^2 lifts the second root to about -1.1i, too shallow for the lower rectangle
  const BoundaryCurve steep(RealPolynomial::monomial({0.0, 0.0, -0.9}));
  CHECK_THROWS_AS(build_dlp(kQuadraticRho, steep, kBox, 30, with_K(10)), SpuriousNearbyRoot);
  CHECK_THROWS_AS(build_dlp(kQuadraticRho, BoundaryCurve(), LeafBox{{0.0, 0.3}, 0.1, 0.1}, 30), InvalidBox);
  CHECK_THROWS_AS(build_dlp(kQuadraticRho, BoundaryCurve(), kBox, -1), InvalidArgument);
  CHECK(potential_kind_from_string("slp") == PotentialKind::SLP);
  CHECK_THROWS_AS(potential_kind_from_string("hypersingular"), ParseError);
}

#include "qb2x/oracle.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>

#include "qb2x/errors.hpp"

namespace qb2x {

using cd = std::complex<double>;

ReferenceResult oracle_dlp_straight(const RealPolynomial& rho, cd w) {
  if (std::abs(w.imag()) < 1e-14 && std::abs(w.real()) <= 1.0)
    throw OnSegment("target lies on the segment [-1, 1]");
  const RealPolynomial mono = rho.to_monomial();
  const std::vector<double>& a = mono.coefficients();
  const int n = static_cast<int>(a.size()) - 1;
  // rho(x) = q(x) (x - w) + rho(w), synthetic division from the top.
  std::vector<cd> q(std::max(n, 1), 0.0);
  cd carry = 0.0;
  for (int k = n; k >= 1; --k) {
    carry = carry * w + a[k];
    q[k - 1] = carry;
  }
  const cd remainder = carry * w + a[0];
  cd integral = 0.0;
  for (int k = 0; k < n; k += 2) integral += 2.0 * q[k] / static_cast<double>(k + 1);
  integral += remainder * (std::log(1.0 - w) - std::log(-1.0 - w));
  ReferenceResult r;
  r.value = -integral.imag() / (2.0 * std::numbers::pi);
  double scale = 0.0;
  for (double c : a) scale += std::abs(c);
  r.est_error = 1e-15 * (1.0 + scale);
  r.n_evals = 1;
  return r;
}

namespace {

struct Rule15 {
  std::array<double, 15> x{}, w{};
  Rule15() {
    using G = boost::math::quadrature::gauss<double, 15>;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    int i = 0;
    for (std::size_t j = ab.size(); j-- > 1;) {
      x[i] = -ab[j];
      w[i++] = wt[j];
    }
    for (std::size_t j = 0; j < ab.size(); ++j) {
      x[i] = ab[j];
      w[i++] = wt[j];
    }
  }
};

const Rule15& rule15() {
  static const Rule15 r;
  return r;
}

struct Panel {
  double a, b;
  double whole, left, right;
  double error() const { return std::abs(whole - (left + right)); }
  bool operator<(const Panel& o) const { return error() < o.error(); }
};

template <class F>
ReferenceResult integrate_adaptive(const F& f, double tol) {
  const Rule15& rule = rule15();
  long evals = 0;
  auto gl = [&](double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int j = 0; j < 15; ++j) s += rule.w[j] * f(mid + half * rule.x[j]);
    evals += 15;
    return s * half;
  };
  auto make = [&](double a, double b, double whole) {
    const double m = 0.5 * (a + b);
    return Panel{a, b, whole, gl(a, m), gl(m, b)};
  };

  constexpr int kInitial = 8;
  constexpr std::size_t kMaxPanels = 1000000;
  std::priority_queue<Panel> heap;
  for (int i = 0; i < kInitial; ++i) {
    const double a = -1.0 + 2.0 * i / kInitial, b = -1.0 + 2.0 * (i + 1) / kInitial;
    heap.push(make(a, b, gl(a, b)));
  }
  auto total_error = [&]() {
    double e = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      e += copy.top().error();
      copy.pop();
    }
    return e;
  };

  double err = total_error();
  while (err > tol) {
    if (heap.size() >= kMaxPanels)
      throw MaxSubdivisions("adaptive quadrature exceeded 10^6 panels (target too close to the curve?)");
    const Panel p = heap.top();
    heap.pop();
    err -= p.error();
    const double m = 0.5 * (p.a + p.b);
    const Panel l = make(p.a, m, p.left), r = make(m, p.b, p.right);
    err += l.error() + r.error();
    heap.push(l);
    heap.push(r);
    if (err <= tol) err = total_error();  // guard against drift in the running sum
  }

  ReferenceResult out;
  out.est_error = 0.0;
  out.value = 0.0;
  while (!heap.empty()) {
    out.value += heap.top().left + heap.top().right;
    out.est_error += heap.top().error();
    heap.pop();
  }
  out.n_evals = evals;
  return out;
}

}  // namespace

ReferenceResult oracle_adaptive(PotentialKind kind, const RealFunction& rho, const BoundaryCurve& curve, cd w,
                                double tol) {
  if (!(tol >= 1e-13)) throw InvalidArgument("oracle_adaptive needs tol >= 1e-13");
  const double x = w.real(), y = w.imag();
  if (std::abs(x) <= 1.0 && std::abs(y - curve.s(x)) < 1e-14) throw OnSegment("target lies on the curve");
  constexpr double pi = std::numbers::pi;
  if (kind == PotentialKind::DLP) {
    return integrate_adaptive(
        [&](double t) {
          const double dx = x - t, dy = y - curve.s(t);
          return (dx * curve.ds(t) - dy) / (dx * dx + dy * dy) * rho(t) / (2.0 * pi);
        },
        tol);
  }
  return integrate_adaptive(
      [&](double t) {
        const double dx = x - t, dy = y - curve.s(t), d = curve.ds(t);
        return std::log(dx * dx + dy * dy) * rho(t) * std::sqrt(1.0 + d * d) / (4.0 * pi);
      },
      tol);
}

ReferenceResult oracle_adaptive(PotentialKind kind, const RealPolynomial& rho, const BoundaryCurve& curve, cd w,
                                double tol) {
  return oracle_adaptive(kind, RealFunction([&rho](double t) { return rho(t); }), curve, w, tol);
}

double harmonic_test_field(cd w) { return std::exp(-5.0 * w.imag()) * std::cos(5.0 * w.real()); }

}  // namespace qb2x

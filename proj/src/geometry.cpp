#include "qb2x/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qb2x/contour.hpp"
#include "qb2x/errors.hpp"

namespace qb2x {

using cd = std::complex<double>;

namespace {

constexpr double kFrameTol = 1e-12;
constexpr int kCompanionMaxDegree = 12;

}  // namespace

BoundaryCurve::BoundaryCurve() : BoundaryCurve(RealPolynomial::monomial({0.0})) {}

BoundaryCurve::BoundaryCurve(RealPolynomial s)
    : s_(std::move(s)), mono_(s_.to_monomial()), d1_(mono_.derivative()), d2_(d1_.derivative()) {
  if (std::abs(mono_(0.0)) > kFrameTol || std::abs(d1_(0.0)) > kFrameTol)
    throw InvalidCurve("boundary curve is not in the normalized frame: need s(0) = s'(0) = 0");
  straight_ = mono_.is_zero();
  for (int j = 0; j <= 1000; ++j) flatness_ = std::max(flatness_, std::abs(mono_(-1.0 + j / 500.0)));
}

std::vector<cd> BoundaryCurve::root_polynomial(cd w) const {
  const auto& c = mono_.coefficients();
  std::vector<cd> q(std::max<std::size_t>(c.size(), 2), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) q[k] = cd(0.0, c[k]);
  q[0] -= w;
  q[1] += 1.0;
  double scale = 0.0;
  for (const cd& v : q) scale = std::max(scale, std::abs(v));
  while (q.size() > 2 && std::abs(q.back()) <= 1e-14 * scale) q.pop_back();
  return q;
}

std::array<cd, 4> LeafBox::corners() const {
  return {cd(x_min(), y_min()), cd(x_max(), y_min()), cd(x_max(), y_max()), cd(x_min(), y_max())};
}

void validate_box(const BoundaryCurve& curve, const LeafBox& box) {
  if (!(box.hx > 0.0) || !(box.hy > 0.0)) throw InvalidBox("box half-widths must be positive");
  if (!(box.x_min() > -1.0 && box.x_max() < 1.0))
    throw InvalidBox("box x-range must stay inside (-1, 1), away from the segment end points");
  if (!(box.center.imag() < curve.s(box.center.real())))
    throw InvalidBox("box center must lie below the curve");
  for (int j = 0; j <= 64; ++j) {
    const double x = box.x_min() + (box.x_max() - box.x_min()) * j / 64.0;
    if (!(box.y_min() < curve.s(x))) throw InvalidBox("box bottom edge must lie below the curve");
  }
}

namespace {

template <class It>
cd horner(It first, It last, cd z) {
  cd acc = 0.0;
  for (auto it = last; it != first;) acc = acc * z + *--it;
  return acc;
}

cd eval(const std::vector<cd>& q, cd z) { return horner(q.begin(), q.end(), z); }

cd eval_derivative(const std::vector<cd>& q, cd z) {
  cd acc = 0.0;
  for (std::size_t k = q.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * q[k];
  return acc;
}

// Rounding error bound for evaluating q at z.
double eval_noise(const std::vector<cd>& q, cd z) {
  double acc = 0.0;
  const double r = std::abs(z);
  for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * r + std::abs(*it);
  return 8.0 * std::numeric_limits<double>::epsilon() * acc * static_cast<double>(q.size());
}

std::vector<cd> companion_roots(const std::vector<cd>& q) {
  const int n = static_cast<int>(q.size()) - 1;
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -q[i] / q[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(C, false);
  if (solver.info() != Eigen::Success) throw RootNotConverged("companion eigensolve failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<cd> aberth_roots(const std::vector<cd>& q) {
  const int n = static_cast<int>(q.size()) - 1;
  double bound = 0.0;  // Cauchy bound
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(q[i] / q[n]));
  bound += 1.0;
  std::vector<cd> z(n);
  for (int k = 0; k < n; ++k) z[k] = std::polar(0.5 * bound, 2.0 * std::numbers::pi * (k + 0.25) / n);
  for (int iter = 0; iter < 500; ++iter) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      const cd ratio = eval(q, z[k]) / eval_derivative(q, z[k]);
      cd repel = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != k) repel += 1.0 / (z[k] - z[j]);
      const cd step = ratio / (1.0 - ratio * repel);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[k])));
    }
    if (worst < 1e-15) return z;
  }
  throw RootNotConverged("Aberth-Ehrlich iteration did not converge");
}

cd newton_polish(const std::vector<cd>& q, cd z) {
  for (int iter = 0; iter < 60; ++iter) {
    const cd f = eval(q, z);
    if (std::abs(f) <= eval_noise(q, z)) return z;
    const cd df = eval_derivative(q, z);
    if (df == 0.0) break;
    const cd step = f / df;
    z -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z)) return z;
  }
  if (std::abs(eval(q, z)) <= 4.0 * eval_noise(q, z)) return z;
  throw RootNotConverged("Newton polishing did not reach the rounding floor");
}

}  // namespace

std::vector<cd> polynomial_roots(const std::vector<cd>& coeffs) {
  std::vector<cd> q = coeffs;
  while (q.size() > 1 && q.back() == 0.0) q.pop_back();
  if (q.size() < 2) throw InvalidArgument("polynomial of degree 0 has no roots");
  for (const cd& c : q)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InvalidArgument("non-finite coefficient");
  if (q.size() == 2) return {-q[0] / q[1]};
  const int degree = static_cast<int>(q.size()) - 1;
  std::vector<cd> roots = degree <= kCompanionMaxDegree ? companion_roots(q) : aberth_roots(q);
  for (cd& r : roots) r = newton_polish(q, r);
  return roots;
}

std::vector<cd> all_roots(const BoundaryCurve& curve, cd w) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw InvalidArgument("target is not finite");
  if (curve.is_straight()) return {w};
  return polynomial_roots(curve.root_polynomial(w));
}

cd find_root_near(const BoundaryCurve& curve, cd w) {
  const auto roots = all_roots(curve, w);
  std::size_t best = 0;
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (std::abs(roots[i] - w) < std::abs(roots[best] - w)) best = i;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i != best && std::abs(roots[i] - w) < 1.0)
      throw SpuriousNearbyRoot("a second root of z + i s(z) - w lies within distance 1 of the target");
  }
  return roots[best];
}

double curvature(const BoundaryCurve& curve, double x) {
  const double d1 = curve.ds(x);
  return curve.d2s(x) / std::pow(1.0 + d1 * d1, 1.5);
}

double compute_r_max(const Contour& contour, const BoundaryCurve& curve, const LeafBox& box) {
  double reach = 0.0;
  for (const cd& w : box.corners()) reach = std::max(reach, std::abs(w - box.center));
  double nearest = std::numeric_limits<double>::infinity();
  for (const cd& z : contour.sample(1024)) nearest = std::min(nearest, std::abs(curve.lift(z) - box.center));
  for (const auto& node : contour.nodes()) nearest = std::min(nearest, std::abs(curve.lift(node.z) - box.center));
  const double r = nearest > 0.0 ? reach / nearest : std::numeric_limits<double>::infinity();
  if (!(r < 0.95))
    throw ContourTouchesBox("separation ratio r_max = " + std::to_string(r) + " is not below 0.95");
  return r;
}

int select_K(double r_max, double weight_sum, double eps) {
  if (!(r_max > 0.0 && r_max < 1.0)) throw InvalidArgument("select_K needs 0 < r_max < 1");
  if (!(weight_sum >= 0.0)) throw InvalidArgument("select_K needs weight_sum >= 0");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("select_K needs 0 < eps < 1");
  constexpr int kMin = 8, kMax = 80;
  if (weight_sum == 0.0) return kMin;
  // weight_sum * r^(K+1) <= eps  <=>  K + 1 >= log(eps / weight_sum) / log(r)
  const double needed = std::log(eps / weight_sum) / std::log(r_max) - 1.0;
  int K = static_cast<int>(std::ceil(needed - 1e-12));
  return std::clamp(K, kMin, kMax);
}

}  // namespace qb2x

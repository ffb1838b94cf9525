#pragma once

#include <array>
#include <complex>
#include <vector>

#include "qb2x/polynomial.hpp"

namespace qb2x {

class Contour;

/// Boundary segment z(x) = x + i s(x), -1 <= x <= 1, in the normalized frame s(0) = s'(0) = 0.
class BoundaryCurve {
public:
  BoundaryCurve();  // the straight segment s = 0
  explicit BoundaryCurve(RealPolynomial s);

  const RealPolynomial& height() const { return s_; }

  double s(double x) const { return mono_(x); }
  double ds(double x) const { return d1_(x); }
  double d2s(double x) const { return d2_(x); }
  std::complex<double> s(std::complex<double> z) const { return mono_(z); }
  std::complex<double> ds(std::complex<double> z) const { return d1_(z); }

  /// z + i s(z), the analytic continuation of the parametrization.
  std::complex<double> lift(std::complex<double> z) const {
    return z + std::complex<double>(0.0, 1.0) * mono_(z);
  }

  bool is_straight() const { return straight_; }
  double flatness() const { return flatness_; }  // max |s| on [-1,1]

  /// Monomial coefficients (ascending) of z + i s(z) - w, trailing zeros trimmed.
  std::vector<std::complex<double>> root_polynomial(std::complex<double> w) const;

private:
  RealPolynomial s_, mono_, d1_, d2_;
  bool straight_ = true;
  double flatness_ = 0.0;
};

enum class Side { Below };

/// Axis-aligned target box. Targets are the box points with y < s(x).
struct LeafBox {
  std::complex<double> center{0.0, 0.0};
  double hx = 0.0;
  double hy = 0.0;
  Side side = Side::Below;

  double x_min() const { return center.real() - hx; }
  double x_max() const { return center.real() + hx; }
  double y_min() const { return center.imag() - hy; }
  double y_max() const { return center.imag() + hy; }
  std::array<std::complex<double>, 4> corners() const;
};

/// Throws InvalidBox unless the box is usable against this curve: center and bottom edge
/// strictly below the curve, and the x-range well inside (-1, 1).
void validate_box(const BoundaryCurve& curve, const LeafBox& box);

/// All roots of a complex polynomial (ascending coefficients), Newton-polished.
std::vector<std::complex<double>> polynomial_roots(const std::vector<std::complex<double>>& coeffs);

/// All roots of z + i s(z) - w = 0.
std::vector<std::complex<double>> all_roots(const BoundaryCurve& curve, std::complex<double> w);

/// The root of z + i s(z) - w = 0 nearest to w.
std::complex<double> find_root_near(const BoundaryCurve& curve, std::complex<double> w);

double curvature(const BoundaryCurve& curve, double x);

double compute_r_max(const Contour& contour, const BoundaryCurve& curve, const LeafBox& box);

/// Smallest K with weight_sum * r_max^(K+1) <= eps, clamped to [8, 80].
int select_K(double r_max, double weight_sum, double eps);

}  // namespace qb2x

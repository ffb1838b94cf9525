#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qb2x/geometry.hpp"

namespace qb2x {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton on the three-term recurrence). Cached per n.
const GaussRule& gauss_legendre(int n);

enum class ContourKind { UpperSemicircle, LowerRectangle };

/// One smooth piece of a contour: a straight line from a to b or a circular arc,
/// parametrized over t in [0, 1] and split into quadrature panels [t_l, t_r].
struct ContourSegment {
  enum class Shape { Line, Arc };
  Shape shape = Shape::Line;
  std::complex<double> a, b;          // Line endpoints
  std::complex<double> center;        // Arc
  double radius = 0.0, theta0 = 0.0, theta1 = 0.0;
  std::vector<std::pair<double, double>> panels;

  std::complex<double> point(double t) const;
  std::complex<double> derivative(double t) const;
  double length() const;

  static ContourSegment line(std::complex<double> from, std::complex<double> to);
  static ContourSegment arc(std::complex<double> center, double radius, double theta0, double theta1);
};

struct QuadratureNode {
  std::complex<double> z;
  std::complex<double> weight;  // z'(t) dt times the Gauss weight
};

/// Piecewise-smooth path from +1 to -1 that closes the real segment [-1, 1]:
/// segment + contour is a closed loop (counter-clockwise through the upper half plane
/// for UpperSemicircle, clockwise through the lower half plane for LowerRectangle).
class Contour {
public:
  Contour(ContourKind kind, std::vector<ContourSegment> segments, int order, double depth_L = 0.0,
          double radius = 1.0);

  ContourKind kind() const { return kind_; }
  double depth_L() const { return depth_L_; }
  double radius() const { return radius_; }
  int order() const { return order_; }
  const std::vector<ContourSegment>& segments() const { return segments_; }

  int panel_count() const;
  double arc_length() const;
  std::complex<double> start() const { return segments_.front().point(0.0); }
  std::complex<double> end() const { return segments_.back().point(1.0); }

  std::vector<QuadratureNode> nodes() const;
  /// Every panel split in half.
  Contour refined() const;
  /// n points per segment, uniform in the segment parameter, endpoints included.
  std::vector<std::complex<double>> sample(int per_segment) const;

private:
  ContourKind kind_;
  std::vector<ContourSegment> segments_;
  int order_;
  double depth_L_;
  double radius_;
};

/// Arc of the given radius centered at 0 through the upper half plane, from +1 to -1.
/// For radius > 1 the arc is joined to +-1 by real-axis legs.
Contour build_upper_contour(double radius = 1.0, int panels = 16, int order = 16);

/// Three sides of the rectangle [-1,1] x [-depth_L, 0], from +1 down, across and up to -1.
/// Side panels are graded geometrically toward +-1.
Contour build_lower_contour(double depth_L = 45.0, int order = 16, double smallest_panel = 1e-3,
                            double grading_ratio = 2.0);

struct MomentOptions {
  double rel_tol = 1e-15;
  int max_doublings = 6;
};

/// Moments m(p, k) = int_contour e^{ipz} / (z + i s(z) - w0)^{k+1} dz for a range of p and
/// k = 0..k_max, refined by panel doubling until every entry has converged.
struct MomentTable {
  int p_min = 0, p_max = 0, k_max = 0;
  int doublings = 0;
  Eigen::MatrixXcd values;  // (p - p_min, k)

  std::complex<double> operator()(int p, int k) const { return values(p - p_min, k); }
};

MomentTable contour_moments(const Contour& contour, const BoundaryCurve& curve, int p_min, int p_max,
                            int k_max, std::complex<double> w0, const MomentOptions& options = {});

std::complex<double> contour_moment(const Contour& contour, const BoundaryCurve& curve, int p, int k,
                                    std::complex<double> w0, const MomentOptions& options = {});

}  // namespace qb2x

#include "qb2x/contour.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "qb2x/errors.hpp"

namespace qb2x {

using cd = std::complex<double>;

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre rule needs n >= 1");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // One more derivative evaluation at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return cache.emplace(n, std::move(rule)).first->second;
}

cd ContourSegment::point(double t) const {
  if (shape == Shape::Line) return a + t * (b - a);
  return center + std::polar(radius, theta0 + t * (theta1 - theta0));
}

cd ContourSegment::derivative(double t) const {
  if (shape == Shape::Line) return b - a;
  return cd(0.0, 1.0) * std::polar(radius, theta0 + t * (theta1 - theta0)) * (theta1 - theta0);
}

double ContourSegment::length() const {
  if (shape == Shape::Line) return std::abs(b - a);
  return radius * std::abs(theta1 - theta0);
}

ContourSegment ContourSegment::line(cd from, cd to) {
  ContourSegment s;
  s.shape = Shape::Line;
  s.a = from;
  s.b = to;
  s.panels = {{0.0, 1.0}};
  return s;
}

ContourSegment ContourSegment::arc(cd center, double radius, double theta0, double theta1) {
  ContourSegment s;
  s.shape = Shape::Arc;
  s.center = center;
  s.radius = radius;
  s.theta0 = theta0;
  s.theta1 = theta1;
  s.panels = {{0.0, 1.0}};
  return s;
}

Contour::Contour(ContourKind kind, std::vector<ContourSegment> segments, int order, double depth_L,
                 double radius)
    : kind_(kind), segments_(std::move(segments)), order_(order), depth_L_(depth_L), radius_(radius) {
  if (segments_.empty()) throw InvalidArgument("contour needs at least one segment");
  if (order_ < 1) throw InvalidArgument("panel order must be positive");
}

int Contour::panel_count() const {
  int n = 0;
  for (const auto& s : segments_) n += static_cast<int>(s.panels.size());
  return n;
}

double Contour::arc_length() const {
  double len = 0.0;
  for (const auto& s : segments_) len += s.length();
  return len;
}

std::vector<QuadratureNode> Contour::nodes() const {
  const GaussRule& rule = gauss_legendre(order_);
  std::vector<QuadratureNode> out;
  out.reserve(static_cast<std::size_t>(panel_count()) * order_);
  for (const auto& seg : segments_) {
    for (const auto& [lo, hi] : seg.panels) {
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (int j = 0; j < order_; ++j) {
        const double t = mid + half * rule.nodes[j];
        out.push_back({seg.point(t), seg.derivative(t) * (half * rule.weights[j])});
      }
    }
  }
  return out;
}

Contour Contour::refined() const {
  Contour c = *this;
  for (auto& seg : c.segments_) {
    std::vector<std::pair<double, double>> split;
    split.reserve(2 * seg.panels.size());
    for (const auto& [lo, hi] : seg.panels) {
      const double mid = 0.5 * (lo + hi);
      split.emplace_back(lo, mid);
      split.emplace_back(mid, hi);
    }
    seg.panels = std::move(split);
  }
  return c;
}

std::vector<cd> Contour::sample(int per_segment) const {
  if (per_segment < 2) throw InvalidArgument("need at least two samples per segment");
  std::vector<cd> pts;
  pts.reserve(segments_.size() * per_segment);
  for (const auto& seg : segments_)
    for (int j = 0; j < per_segment; ++j) pts.push_back(seg.point(static_cast<double>(j) / (per_segment - 1)));
  return pts;
}

namespace {

std::vector<std::pair<double, double>> uniform_panels(int n) {
  std::vector<std::pair<double, double>> p;
  for (int i = 0; i < n; ++i) p.emplace_back(static_cast<double>(i) / n, static_cast<double>(i + 1) / n);
  return p;
}

// Panels growing by `ratio` away from t = 0, smallest of arc length `smallest`.
std::vector<std::pair<double, double>> graded_panels(double length, double smallest, double ratio) {
  std::vector<double> edges{0.0};
  double h = smallest;
  while (edges.back() + h < length) {
    edges.push_back(edges.back() + h);
    h *= ratio;
  }
  edges.push_back(length);
  std::vector<std::pair<double, double>> p;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) p.emplace_back(edges[i] / length, edges[i + 1] / length);
  return p;
}

std::vector<std::pair<double, double>> mirrored(std::vector<std::pair<double, double>> panels) {
  std::vector<std::pair<double, double>> out;
  for (auto it = panels.rbegin(); it != panels.rend(); ++it) out.emplace_back(1.0 - it->second, 1.0 - it->first);
  return out;
}

}  // namespace

Contour build_upper_contour(double radius, int panels, int order) {
  if (!(radius >= 1.0)) throw InvalidArgument("upper contour radius must be >= 1");
  if (panels < 1) throw InvalidArgument("upper contour needs at least one panel");
  std::vector<ContourSegment> segs;
  if (radius > 1.0) {
    segs.push_back(ContourSegment::line(1.0, radius));
    segs.back().panels = uniform_panels(2);
  }
  segs.push_back(ContourSegment::arc(0.0, radius, 0.0, std::numbers::pi));
  segs.back().panels = uniform_panels(panels);
  if (radius > 1.0) {
    segs.push_back(ContourSegment::line(-radius, -1.0));
    segs.back().panels = uniform_panels(2);
  }
  return Contour(ContourKind::UpperSemicircle, std::move(segs), order, 0.0, radius);
}

Contour build_lower_contour(double depth_L, int order, double smallest_panel, double grading_ratio) {
  if (!(depth_L > 0.0)) throw InvalidArgument("lower contour depth must be positive");
  if (!(smallest_panel > 0.0) || !(grading_ratio > 1.0)) throw InvalidArgument("bad panel grading");
  const cd down(0.0, -depth_L);
  std::vector<ContourSegment> segs;
  segs.push_back(ContourSegment::line(1.0, 1.0 + down));
  segs.back().panels = graded_panels(depth_L, smallest_panel, grading_ratio);
  segs.push_back(ContourSegment::line(1.0 + down, -1.0 + down));
  segs.back().panels = uniform_panels(4);
  segs.push_back(ContourSegment::line(-1.0 + down, -1.0));
  segs.back().panels = mirrored(graded_panels(depth_L, smallest_panel, grading_ratio));
  return Contour(ContourKind::LowerRectangle, std::move(segs), order, depth_L, 1.0);
}

namespace {

void check_frequencies(const Contour& contour, int p_min, int p_max) {
  if (p_min > p_max) throw InvalidArgument("empty frequency range");
  if (contour.kind() == ContourKind::UpperSemicircle && p_min < 0)
    throw WrongContourForFrequency("negative frequency p=" + std::to_string(p_min) +
                                   " grows exponentially on the upper contour");
  if (contour.kind() == ContourKind::LowerRectangle && p_max >= 0)
    throw WrongContourForFrequency("non-negative frequency p=" + std::to_string(p_max) +
                                   " grows exponentially on the lower contour");
}

struct RawMoments {
  Eigen::MatrixXcd values;
  int nodes = 0;
  Eigen::MatrixXd magnitude;  // sum of |integrand * weight|, for the roundoff floor
};

RawMoments integrate(const Contour& contour, const BoundaryCurve& curve, int p_min, int p_max, int k_max,
                     cd w0) {
  const auto nodes = contour.nodes();
  const int n = static_cast<int>(nodes.size());
  const int np = p_max - p_min + 1;
  Eigen::MatrixXcd E(np, n), G(n, k_max + 1);
  for (int i = 0; i < n; ++i) {
    const cd z = nodes[i].z;
    const cd D = curve.lift(z) - w0;
    if (std::abs(D) == 0.0) throw ContourTouchesBox("contour passes through the expansion center's root");
    for (int j = 0; j < np; ++j) E(j, i) = std::exp(cd(0.0, p_min + j) * z) * nodes[i].weight;
    const cd inv = 1.0 / D;
    cd g = inv;
    for (int k = 0; k <= k_max; ++k) {
      G(i, k) = g;
      g *= inv;
    }
  }
  RawMoments out;
  out.values = E * G;
  out.nodes = n;
  out.magnitude = E.cwiseAbs() * G.cwiseAbs();
  return out;
}

}  // namespace

MomentTable contour_moments(const Contour& contour, const BoundaryCurve& curve, int p_min, int p_max, int k_max,
                            cd w0, const MomentOptions& options) {
  check_frequencies(contour, p_min, p_max);
  if (k_max < 0) throw InvalidArgument("k_max must be >= 0");

  constexpr double eps = std::numeric_limits<double>::epsilon();
  Contour current = contour;
  RawMoments prev = integrate(current, curve, p_min, p_max, k_max, w0);
  for (int d = 1; d <= options.max_doublings; ++d) {
    current = current.refined();
    RawMoments next = integrate(current, curve, p_min, p_max, k_max, w0);
    // Summation roundoff grows like sqrt(node count) times the sum of |terms|.
    const double floor = 4.0 * eps * std::sqrt(static_cast<double>(next.nodes));
    bool converged = true;
    for (Eigen::Index i = 0; i < next.values.rows() && converged; ++i) {
      for (Eigen::Index k = 0; k < next.values.cols(); ++k) {
        const double diff = std::abs(next.values(i, k) - prev.values(i, k));
        const double tol = std::max(options.rel_tol * (1.0 + std::abs(next.values(i, k))),
                                    floor * next.magnitude(i, k));
        if (!(diff <= tol)) {
          converged = false;
          break;
        }
      }
    }
    if (converged) {
      MomentTable table;
      table.p_min = p_min;
      table.p_max = p_max;
      table.k_max = k_max;
      table.doublings = d;
      table.values = std::move(next.values);
      return table;
    }
    prev = std::move(next);
  }
  throw QuadratureNotConverged("contour moments did not converge after " +
                               std::to_string(options.max_doublings) + " panel doublings");
}

cd contour_moment(const Contour& contour, const BoundaryCurve& curve, int p, int k, cd w0,
                  const MomentOptions& options) {
  return contour_moments(contour, curve, p, p, k, w0, options)(p, k);
}

}  // namespace qb2x

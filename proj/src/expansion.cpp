#include "qb2x/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qb2x/errors.hpp"

namespace qb2x {

using cd = std::complex<double>;

namespace {
constexpr cd I(0.0, 1.0);
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

std::string_view to_string(PotentialKind kind) { return kind == PotentialKind::DLP ? "DLP" : "SLP"; }

PotentialKind potential_kind_from_string(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "DLP") return PotentialKind::DLP;
  if (upper == "SLP") return PotentialKind::SLP;
  throw ParseError("unknown potential kind '" + std::string(text) + "'");
}

ExpansionGeometry prepare_geometry(const BoundaryCurve& curve, const LeafBox& box, const RepOptions& options) {
  validate_box(curve, box);
  if (!(options.depth_L > 0.0)) throw InvalidArgument("depth_L must be positive");
  if (!(options.upper_radius >= 1.0)) throw InvalidArgument("upper contour radius must be >= 1");

  const double R = options.upper_radius;
  double shallowest = std::numeric_limits<double>::infinity();
  double deepest_target = 0.0;
  const double xs[3] = {box.x_min(), box.center.real(), box.x_max()};
  for (double x : xs) {
    const double top = std::min(box.y_max(), curve.s(x) - 1e-3);
    const double ys[3] = {box.y_min(), 0.5 * (box.y_min() + top), top};
    for (double y : ys) {
      const cd w(x, y);
      const cd selected = find_root_near(curve, w);
      if (!(std::abs(selected.real()) < 1.0 && selected.imag() < 0.0))
        throw InvalidBox("target root does not lie under the segment");
      deepest_target = std::max(deepest_target, -selected.imag());
      for (const cd& z : all_roots(curve, w)) {
        if (z == selected) continue;
        if (z.imag() >= 0.0 && std::abs(z) < R)
          throw SpuriousNearbyRoot("a second root of z + i s(z) - w lies inside the upper contour");
        if (std::abs(z.real()) < 1.0 && z.imag() <= 0.0) shallowest = std::min(shallowest, -z.imag());
      }
    }
  }

  const double depth = std::min(options.depth_L, 0.5 * shallowest);
  if (!(depth >= 2.0 * deepest_target))
    throw SpuriousNearbyRoot("a second root of z + i s(z) - w lies too close under the segment (depth " +
                             std::to_string(shallowest) + ")");

  ExpansionGeometry g{curve, box, build_upper_contour(R), build_lower_contour(depth), 0.0, 0.0, depth};
  g.r_max_upper = compute_r_max(g.upper, curve, box);
  g.r_max_lower = compute_r_max(g.lower, curve, box);
  return g;
}

MomentSet compute_moments(const ExpansionGeometry& geometry, int P, int K, const MomentOptions& options) {
  if (P < 0) throw InvalidArgument("P must be >= 0");
  if (K < 0) throw InvalidArgument("K must be >= 0");
  MomentSet m;
  m.P = P;
  m.K = K;
  m.upper = contour_moments(geometry.upper, geometry.curve, 0, P, K, geometry.w0(), options);
  if (P >= 1) m.lower = contour_moments(geometry.lower, geometry.curve, -P, -1, K, geometry.w0(), options);
  return m;
}

IntegralRep integral_rep(const FourierExtension& f_ext, const MomentSet& moments) {
  if (f_ext.P > moments.P) throw InvalidArgument("extension has more frequencies than the moment set");
  const int P = moments.P;
  IntegralRep rep;
  rep.local_coeffs.assign(moments.K + 1, 0.0);
  rep.pw_weights.assign(P, 0.0);
  for (int p = -f_ext.P; p <= f_ext.P; ++p) {
    const cd w = f_ext[p];
    if (w == 0.0) continue;
    const MomentTable& table = p >= 0 ? moments.upper : moments.lower;
    for (int k = 0; k <= moments.K; ++k) rep.local_coeffs[k] -= w * table(p, k);
    if (p < 0) rep.pw_weights[p + P] = -I * kTwoPi * w;
  }
  return rep;
}

IntegralRep integral_rep(const FourierExtension& f_ext, const BoundaryCurve& curve, const LeafBox& box,
                         const RepOptions& options) {
  const ExpansionGeometry g = prepare_geometry(curve, box, options);
  const int K = options.K ? *options.K : select_K(g.r_max(), f_ext.weight_sum(), options.eps);
  return integral_rep(f_ext, compute_moments(g, f_ext.P, K, options.moments));
}

cd evaluate_local(const std::vector<cd>& coeffs, cd w0, cd w) {
  const cd u = w - w0;
  cd acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
  return acc;
}

namespace {

// sum_{p=-P}^{-1} weights[p+P] e^{ipw~} / (1 + i s'(w~))
cd plane_waves(const std::vector<cd>& weights, const BoundaryCurve& curve, cd w) {
  const int P = static_cast<int>(weights.size());
  if (P == 0) return 0.0;
  const cd wt = find_root_near(curve, w);
  const cd step = std::exp(-I * wt);
  cd e = 1.0, sum = 0.0;
  for (int p = -1; p >= -P; --p) {
    e *= step;
    sum += weights[p + P] * e;
  }
  return sum / (1.0 + I * curve.ds(wt));
}

FourierExtension fit_or_zero(const RealFunction& f, int P, bool zero) {
  if (zero) {
    FourierExtension ext(P);
    return ext;
  }
  return fit_fourier_extension(f, P);
}

struct Part {
  std::string name;
  cd factor;
  FourierExtension density;
};

struct EndValues {
  double right = 0.0;  // F(1)
  double left = 0.0;   // F(-1)
};

// log(w - z_e) = log(w0 - z_e) - sum_{k>=1} (1/k) (-(w - w0)/(w0 - z_e))^k
std::vector<cd> boundary_series(const BoundaryCurve& curve, cd w0, const EndValues& ends, int K) {
  std::vector<cd> c(K + 1, 0.0);
  const std::pair<double, double> terms[2] = {{1.0, ends.right}, {-1.0, -ends.left}};
  for (const auto& [x, f] : terms) {
    if (f == 0.0) continue;
    const cd a = w0 - cd(x, curve.s(x));
    c[0] += f * std::log(a);
    const cd ratio = -1.0 / a;
    cd pw = 1.0;
    for (int k = 1; k <= K; ++k) {
      pw *= ratio;
      c[k] -= f * pw / static_cast<double>(k);
    }
  }
  return c;
}

Qb2xRepresentation assemble(PotentialKind kind, const ExpansionGeometry& g, int P, std::vector<Part> parts,
                            const RepOptions& options, const EndValues* ends) {
  double weight_sum = 0.0;
  for (const Part& part : parts) weight_sum = std::max(weight_sum, part.density.weight_sum());
  const int K = options.K ? *options.K : select_K(g.r_max(), weight_sum, options.eps);
  if (K < 0) throw InvalidArgument("K must be >= 0");
  const MomentSet moments = compute_moments(g, P, K, options.moments);

  Qb2xRepresentation rep;
  rep.kind = kind;
  rep.w0 = g.w0();
  rep.K = K;
  rep.P = P;
  rep.curve = g.curve;
  rep.box = g.box;
  rep.scale = 1.0 / kTwoPi;
  rep.r_max_upper = g.r_max_upper;
  rep.r_max_lower = g.r_max_lower;
  rep.target_eps = options.eps;
  rep.depth_L = g.depth_L;
  rep.local_coeffs.assign(K + 1, 0.0);
  rep.pw_weights.assign(P, 0.0);
  for (Part& part : parts) {
    Constituent c{std::move(part.name), part.factor, std::move(part.density), {}};
    c.rep = integral_rep(c.density, moments);
    for (int k = 0; k <= K; ++k) rep.local_coeffs[k] += c.factor * c.rep.local_coeffs[k];
    for (int j = 0; j < P; ++j) rep.pw_weights[j] += c.factor * c.rep.pw_weights[j];
    rep.constituents.push_back(std::move(c));
  }
  if (ends) {
    rep.boundary_coeffs = boundary_series(g.curve, rep.w0, *ends, K);
    for (int k = 0; k <= K; ++k) rep.local_coeffs[k] += rep.boundary_coeffs[k];
  }
  return rep;
}

// Re[-J(s' rho) + i J(rho)] / 2pi
Qb2xRepresentation dlp_from_extensions(const ExpansionGeometry& g, int P, FourierExtension f1,
                                       FourierExtension f2, const RepOptions& options) {
  std::vector<Part> parts;
  parts.push_back({"s'rho", -1.0, std::move(f1)});
  parts.push_back({"rho", I, std::move(f2)});
  return assemble(PotentialKind::DLP, g, P, std::move(parts), options, nullptr);
}

void check_P(int P) {
  if (P < 0) throw InvalidArgument("P must be >= 0");
}

}  // namespace

cd eval_integral(const IntegralRep& rep, const BoundaryCurve& curve, cd w0, cd w) {
  return evaluate_local(rep.local_coeffs, w0, w) + plane_waves(rep.pw_weights, curve, w);
}

Qb2xRepresentation build_dlp(const RealPolynomial& rho, const BoundaryCurve& curve, const LeafBox& box, int P,
                             const RepOptions& options) {
  check_P(P);
  const ExpansionGeometry g = prepare_geometry(curve, box, options);
  FourierExtension f2;
  if (P >= 1) {
    const RealPolynomial cheb = rho.to_chebyshev();
    f2 = ChebyshevFourierMap(cheb.degree(), P).apply(cheb);
  } else {
    f2 = fit_fourier_extension([&](double x) { return rho(x); }, P);
  }
  FourierExtension f1 =
      fit_or_zero([&](double x) { return curve.ds(x) * rho(x); }, P, curve.is_straight() || rho.is_zero());
  return dlp_from_extensions(g, P, std::move(f1), std::move(f2), options);
}

Qb2xRepresentation build_dlp(const RealFunction& rho, const BoundaryCurve& curve, const LeafBox& box, int P,
                             const RepOptions& options) {
  check_P(P);
  const ExpansionGeometry g = prepare_geometry(curve, box, options);
  FourierExtension f2 = fit_fourier_extension(rho, P);
  FourierExtension f1 = fit_or_zero([&](double x) { return curve.ds(x) * rho(x); }, P, curve.is_straight());
  return dlp_from_extensions(g, P, std::move(f1), std::move(f2), options);
}

Qb2xRepresentation build_slp(const RealFunction& rho, const BoundaryCurve& curve, const LeafBox& box, int P,
                             const RepOptions& options) {
  check_P(P);
  const ExpansionGeometry g = prepare_geometry(curve, box, options);
  const FourierExtension rho_tilde = fit_fourier_extension(
      [&](double x) {
        const double d = curve.ds(x);
        return rho(x) * std::sqrt(1.0 + d * d);
      },
      P);
  // F' = rho~; the linear part is folded back in by re-fitting F as a whole.
  const Antiderivative anti = antiderivative_extension(rho_tilde);
  FourierExtension F = fit_fourier_extension([&](double x) { return anti(x); }, P);
  FourierExtension sF = fit_or_zero([&](double x) { return curve.ds(x) * F(x); }, P, curve.is_straight());
  const EndValues ends{F(1.0), F(-1.0)};

  // Re[B - J(F) - i J(s'F)] / 2pi
  std::vector<Part> parts;
  parts.push_back({"F", -1.0, std::move(F)});
  parts.push_back({"s'F", -I, std::move(sF)});
  return assemble(PotentialKind::SLP, g, P, std::move(parts), options, &ends);
}

Qb2xRepresentation build_slp(const RealPolynomial& rho, const BoundaryCurve& curve, const LeafBox& box, int P,
                             const RepOptions& options) {
  return build_slp(RealFunction([rho](double x) { return rho(x); }), curve, box, P, options);
}

double eval_rep(const Qb2xRepresentation& rep, cd w) {
  const cd v = evaluate_local(rep.local_coeffs, rep.w0, w) + plane_waves(rep.pw_weights, rep.curve, w);
  return rep.scale * v.real();
}

double eval_constituents(const Qb2xRepresentation& rep, cd w) {
  double sum = 0.0;
  for (const Constituent& c : rep.constituents)
    sum += (c.factor * eval_integral(c.rep, rep.curve, rep.w0, w)).real();
  if (!rep.boundary_coeffs.empty()) sum += evaluate_local(rep.boundary_coeffs, rep.w0, w).real();
  return rep.scale * sum;
}

}  // namespace qb2x

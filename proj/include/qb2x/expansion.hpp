#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qb2x/contour.hpp"
#include "qb2x/fourier_extension.hpp"
#include "qb2x/geometry.hpp"
#include "qb2x/polynomial.hpp"

namespace qb2x {

enum class PotentialKind { DLP, SLP };

std::string_view to_string(PotentialKind kind);
PotentialKind potential_kind_from_string(std::string_view text);

struct RepOptions {
  double eps = 1e-12;         // target accuracy used when K is chosen automatically
  std::optional<int> K;       // fixed number of local terms (c_0..c_K); automatic if empty
  double depth_L = 45.0;      // lower rectangle depth before the spurious-root clamp
  double upper_radius = 1.0;  // semicircle radius of the upper contour
  MomentOptions moments;
};

/// Contours, separation ratios and clamped depth for one curve/box pair.
struct ExpansionGeometry {
  BoundaryCurve curve;
  LeafBox box;
  Contour upper;
  Contour lower;
  double r_max_upper = 0.0;
  double r_max_lower = 0.0;
  double depth_L = 0.0;

  std::complex<double> w0() const { return box.center; }
  double r_max() const { return std::max(r_max_upper, r_max_lower); }
};

/// Validates the box, checks every other root of z + i s(z) - w over a 3x3 grid of box targets,
/// clamps the lower depth below the shallowest one and builds both contours.
/// Throws SpuriousNearbyRoot when a non-selected root sits inside either closed loop.
ExpansionGeometry prepare_geometry(const BoundaryCurve& curve, const LeafBox& box,
                                   const RepOptions& options = {});

/// Upper moments for p = 0..P and lower moments for p = -P..-1, k = 0..K.
struct MomentSet {
  int P = 0;
  int K = 0;
  MomentTable upper;
  MomentTable lower;
};

MomentSet compute_moments(const ExpansionGeometry& geometry, int P, int K, const MomentOptions& options = {});

/// Pieces of J(w) = int_{-1}^{1} f(x) / (x + i s(x) - w) dx:
///   J(w) = sum_k local_coeffs[k] (w - w0)^k + sum_{p<0} pw_weights[p] e^{ipw~} / (1 + i s'(w~)).
struct IntegralRep {
  std::vector<std::complex<double>> local_coeffs;  // k = 0..K
  std::vector<std::complex<double>> pw_weights;    // p = -P..-1 at index p + P
};

IntegralRep integral_rep(const FourierExtension& f_ext, const MomentSet& moments);

/// Convenience form: sets up the geometry and moments for this one density.
IntegralRep integral_rep(const FourierExtension& f_ext, const BoundaryCurve& curve, const LeafBox& box,
                         const RepOptions& options = {});

/// Evaluates an IntegralRep (complex, before any Re/Im selection).
std::complex<double> eval_integral(const IntegralRep& rep, const BoundaryCurve& curve, std::complex<double> w0,
                                   std::complex<double> w);

/// Local expansion sum_k c_k (w - w0)^k by Horner's rule.
std::complex<double> evaluate_local(const std::vector<std::complex<double>>& coeffs, std::complex<double> w0,
                                    std::complex<double> w);

/// One term factor * J_f(w) of a potential, kept for inspection and testing.
struct Constituent {
  std::string name;
  std::complex<double> factor;
  FourierExtension density;
  IntegralRep rep;
};

/// value(w) = scale * Re( sum_k c_k (w-w0)^k + sum_{p<0} w_p e^{ipw~} / (1 + i s'(w~)) ).
struct Qb2xRepresentation {
  PotentialKind kind = PotentialKind::DLP;
  std::complex<double> w0;
  int K = 0;
  int P = 0;
  std::vector<std::complex<double>> local_coeffs;
  std::vector<std::complex<double>> pw_weights;  // p = -P..-1 at index p + P
  BoundaryCurve curve;
  LeafBox box;
  double scale = 0.0;
  double r_max_upper = 0.0;
  double r_max_lower = 0.0;
  double target_eps = 0.0;
  double depth_L = 0.0;
  std::vector<Constituent> constituents;
  std::vector<std::complex<double>> boundary_coeffs;  // SLP end-point log terms, folded into local_coeffs
};

Qb2xRepresentation build_dlp(const RealPolynomial& rho, const BoundaryCurve& curve, const LeafBox& box, int P,
                             const RepOptions& options = {});
Qb2xRepresentation build_dlp(const RealFunction& rho, const BoundaryCurve& curve, const LeafBox& box, int P,
                             const RepOptions& options = {});

Qb2xRepresentation build_slp(const RealPolynomial& rho, const BoundaryCurve& curve, const LeafBox& box, int P,
                             const RepOptions& options = {});
Qb2xRepresentation build_slp(const RealFunction& rho, const BoundaryCurve& curve, const LeafBox& box, int P,
                             const RepOptions& options = {});

double eval_rep(const Qb2xRepresentation& rep, std::complex<double> w);

/// Same value computed constituent by constituent (no merged coefficients).
double eval_constituents(const Qb2xRepresentation& rep, std::complex<double> w);

/// Smallest N with sum_{k>=N} p^k / k! = e^p P(N, p) <= eps.
int estimate_qbx_terms(int p, double eps);

/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

}  // namespace qb2x

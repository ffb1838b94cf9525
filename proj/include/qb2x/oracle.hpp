#pragma once

#include <complex>

#include "qb2x/expansion.hpp"
#include "qb2x/fourier_extension.hpp"
#include "qb2x/geometry.hpp"
#include "qb2x/polynomial.hpp"

namespace qb2x {

// Reference evaluators. None of these touch the expansion machinery: the straight-line
// formula is closed form and the adaptive rule integrates the real kernels directly.

struct ReferenceResult {
  double value = 0.0;
  double est_error = 0.0;
  long n_evals = 0;
};

/// DLP of a polynomial density on the straight segment [-1, 1]:
/// -(1/2pi) Im int rho(x) / (x - w) dx, by polynomial division and the closed-form log.
ReferenceResult oracle_dlp_straight(const RealPolynomial& rho, std::complex<double> w);

/// Globally adaptive 15-point Gauss-Legendre bisection on the real DLP/SLP integrands:
///   DLP: (1/2pi) ((x - t) s'(t) - (y - s(t))) / ((x - t)^2 + (y - s(t))^2) rho(t)
///   SLP: (1/4pi) log((x - t)^2 + (y - s(t))^2) rho(t) sqrt(1 + s'(t)^2)
ReferenceResult oracle_adaptive(PotentialKind kind, const RealFunction& rho, const BoundaryCurve& curve,
                                std::complex<double> w, double tol);
ReferenceResult oracle_adaptive(PotentialKind kind, const RealPolynomial& rho, const BoundaryCurve& curve,
                                std::complex<double> w, double tol);

/// Re(e^{5iw}) = e^{-5y} cos(5x).
double harmonic_test_field(std::complex<double> w);

}  // namespace qb2x

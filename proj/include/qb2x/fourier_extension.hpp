#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qb2x/polynomial.hpp"

namespace qb2x {

using RealFunction = std::function<double(double)>;

/// Truncated Fourier series sum_{p=-P}^{P} w_p e^{i p x} with fundamental period 2*pi,
/// fitted to a non-periodic function on [-1,1].
struct FourierExtension {
  int P = 0;
  std::vector<std::complex<double>> weights;  // index p + P
  double fit_residual = 0.0;                  // max |g - f| on the check grid
  int rank = 0;                               // singular values kept by the fit

  FourierExtension() : weights(1, 0.0) {}
  explicit FourierExtension(int P_) : P(P_), weights(2 * P_ + 1, 0.0) {}

  std::complex<double>& operator[](int p) { return weights[p + P]; }
  std::complex<double> operator[](int p) const { return weights[p + P]; }

  std::complex<double> evaluate(std::complex<double> z) const;
  double operator()(double x) const { return evaluate(x).real(); }

  /// Termwise derivative: w_p -> i p w_p.
  FourierExtension derivative() const;

  double weight_sum() const;
  double max_conjugate_asymmetry() const;
};

struct FitOptions {
  double svd_cutoff = 1e-14;  // relative to the largest singular value
  int oversampling = 8;       // least-squares samples per unknown
  int check_density = 4;      // residual grid is this much denser
};

/// Least-squares Fourier extension of f on [-1,1] with frequencies |p| <= P.
FourierExtension fit_fourier_extension(const RealFunction& f, int P, const FitOptions& options = {});

/// Max |g - f| over the dense check grid used by fit_fourier_extension.
double extension_residual(const FourierExtension& ext, const RealFunction& f,
                          const FitOptions& options = {});

/// Precomputed Chebyshev -> Fourier translation: column n holds the extension weights of T_n.
class ChebyshevFourierMap {
public:
  ChebyshevFourierMap(int N, int P, const FitOptions& options = {});

  int N() const { return N_; }
  int P() const { return P_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  /// Extension of sum_n coeffs[n] T_n; the residual is measured against the polynomial.
  FourierExtension apply(const std::vector<double>& chebyshev_coefficients) const;
  FourierExtension apply(const RealPolynomial& poly) const;

private:
  int N_, P_;
  FitOptions options_;
  int rank_ = 0;
  Eigen::MatrixXcd matrix_;
};

ChebyshevFourierMap cheb_to_fourier_map(int N, int P, const FitOptions& options = {});

struct Antiderivative {
  FourierExtension oscillatory;  // w_p / (i p) for p != 0, zero constant term
  double linear_coeff = 0.0;     // w_0, multiplying x

  double operator()(double x) const { return oscillatory(x) + linear_coeff * x; }
};

Antiderivative antiderivative_extension(const FourierExtension& ext);

}  // namespace qb2x

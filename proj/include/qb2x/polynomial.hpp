#pragma once

#include <complex>
#include <string_view>
#include <vector>

namespace qb2x {

enum class Basis { Chebyshev, Monomial };

std::string_view to_string(Basis basis);
Basis basis_from_string(std::string_view text);

/// Real polynomial on [-1,1], stored in either the Chebyshev or the monomial basis.
///
/// Evaluation uses Clenshaw (Chebyshev) or Horner (monomial); both accept complex
/// arguments because the boundary height s(z) is continued off the real axis.
class RealPolynomial {
public:
  RealPolynomial();  // the zero polynomial, monomial basis
  RealPolynomial(Basis basis, std::vector<double> coefficients);

  static RealPolynomial monomial(std::vector<double> coefficients);
  static RealPolynomial chebyshev(std::vector<double> coefficients);

  Basis basis() const { return basis_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> z) const;

  RealPolynomial derivative() const;
  RealPolynomial to_monomial() const;
  RealPolynomial to_chebyshev() const;

  /// Degree after dropping trailing coefficients with |c| <= tol * max|c|.
  int effective_degree(double tol = 0.0) const;
  bool is_zero() const;

private:
  Basis basis_;
  std::vector<double> coeffs_;
};

}  // namespace qb2x

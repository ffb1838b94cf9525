#include "qb2x/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qb2x/errors.hpp"

namespace qb2x {

std::string_view to_string(Basis basis) {
  return basis == Basis::Chebyshev ? "chebyshev" : "monomial";
}

Basis basis_from_string(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "chebyshev") return Basis::Chebyshev;
  if (lower == "monomial") return Basis::Monomial;
  throw ParseError("unknown polynomial basis '" + std::string(text) + "'");
}

RealPolynomial::RealPolynomial() : basis_(Basis::Monomial), coeffs_{0.0} {}

RealPolynomial::RealPolynomial(Basis basis, std::vector<double> coefficients)
    : basis_(basis), coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw InvalidArgument("polynomial coefficient is not finite");
}

RealPolynomial RealPolynomial::monomial(std::vector<double> coefficients) {
  return {Basis::Monomial, std::move(coefficients)};
}

RealPolynomial RealPolynomial::chebyshev(std::vector<double> coefficients) {
  return {Basis::Chebyshev, std::move(coefficients)};
}

namespace {

template <class T>
T horner(const std::vector<double>& c, T x) {
  T acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

template <class T>
T clenshaw(const std::vector<double>& c, T x) {
  T b1 = 0.0, b2 = 0.0;
  for (std::size_t n = c.size(); n-- > 1;) {
    T b0 = 2.0 * x * b1 - b2 + c[n];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

}  // namespace

double RealPolynomial::operator()(double x) const {
  return basis_ == Basis::Chebyshev ? clenshaw(coeffs_, x) : horner(coeffs_, x);
}

std::complex<double> RealPolynomial::operator()(std::complex<double> z) const {
  return basis_ == Basis::Chebyshev ? clenshaw(coeffs_, z) : horner(coeffs_, z);
}

RealPolynomial RealPolynomial::derivative() const {
  const int n = degree();
  if (n == 0) return {basis_, {0.0}};
  std::vector<double> d(n, 0.0);
  if (basis_ == Basis::Monomial) {
    for (int k = 1; k <= n; ++k) d[k - 1] = k * coeffs_[k];
    return {basis_, std::move(d)};
  }
  // Chebyshev: d_{k-1} = d_{k+1} + 2k c_k, with d_0 halved at the end.
  std::vector<double> t(n + 1, 0.0);
  for (int k = n; k >= 1; --k) t[k - 1] = (k + 1 <= n ? t[k + 1] : 0.0) + 2.0 * k * coeffs_[k];
  t[0] *= 0.5;
  t.resize(n);
  return {basis_, std::move(t)};
}

RealPolynomial RealPolynomial::to_monomial() const {
  if (basis_ == Basis::Monomial) return *this;
  const int n = degree();
  // Monomial coefficients of T_{k-1}, T_k, advanced with T_{k+1} = 2x T_k - T_{k-1}.
  // Extended precision keeps the round trip at the rounding level of the output.
  std::vector<long double> out(n + 1, 0.0L), prev(n + 1, 0.0L), cur(n + 1, 0.0L);
  prev[0] = 1.0L;
  out[0] += coeffs_[0];
  if (n >= 1) {
    cur[1] = 1.0L;
    out[1] += coeffs_[1];
  }
  for (int k = 1; k < n; ++k) {
    std::vector<long double> next(n + 1, 0.0L);
    for (int j = 0; j <= k; ++j) next[j + 1] += 2.0L * cur[j];
    for (int j = 0; j <= k - 1; ++j) next[j] -= prev[j];
    for (int j = 0; j <= k + 1; ++j) out[j] += coeffs_[k + 1] * next[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {Basis::Monomial, std::vector<double>(out.begin(), out.end())};
}

RealPolynomial RealPolynomial::to_chebyshev() const {
  if (basis_ == Basis::Chebyshev) return *this;
  const int n = degree();
  // Horner in the Chebyshev algebra: acc <- x*acc + c_k, with
  // x*T_0 = T_1 and x*T_j = (T_{j-1} + T_{j+1}) / 2.
  std::vector<long double> acc(n + 1, 0.0L);
  int len = 0;
  for (int k = n; k >= 0; --k) {
    std::vector<long double> next(n + 1, 0.0L);
    for (int j = 0; j < len; ++j) {
      if (j == 0) {
        next[1] += acc[0];
      } else {
        next[j - 1] += 0.5L * acc[j];
        next[j + 1] += 0.5L * acc[j];
      }
    }
    next[0] += coeffs_[k];
    acc = std::move(next);
    len = std::min(n + 1, n - k + 1);
  }
  return {Basis::Chebyshev, std::vector<double>(acc.begin(), acc.end())};
}

int RealPolynomial::effective_degree(double tol) const {
  double scale = 0.0;
  for (double c : coeffs_) scale = std::max(scale, std::abs(c));
  int d = degree();
  while (d > 0 && std::abs(coeffs_[d]) <= tol * scale) --d;
  return d;
}

bool RealPolynomial::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

}  // namespace qb2x

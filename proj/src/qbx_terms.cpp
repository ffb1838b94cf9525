#include <cmath>
#include <limits>

#include "qb2x/errors.hpp"
#include "qb2x/expansion.hpp"

namespace qb2x {

namespace {

constexpr int kMaxIter = 10000;
constexpr double kTiny = 1e-300;

// log(e^x P(a, x)) by the series x^a / Gamma(a+1) * sum_n x^n / ((a+1)...(a+n)).
double log_scaled_series(double a, double x) {
  double term = 1.0, sum = 1.0;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (term < sum * std::numeric_limits<double>::epsilon()) break;
  }
  return a * std::log(x) - std::lgamma(a + 1.0) + std::log(sum);
}

// Q(a, x) by the Lentz continued fraction.
double gamma_q_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < std::numeric_limits<double>::epsilon()) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) throw InvalidArgument("regularized_gamma_p needs a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return std::exp(log_scaled_series(a, x) - x);
  return 1.0 - gamma_q_fraction(a, x);
}

int estimate_qbx_terms(int p, double eps) {
  if (p < 0) throw InvalidArgument("estimate_qbx_terms needs p >= 0");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("estimate_qbx_terms needs 0 < eps < 1");
  if (p == 0) return 1;
  const double x = p;
  const double log_eps = std::log(eps);
  for (int N = 1; N < kMaxIter; ++N) {
    const double a = N;
    // tail = e^p P(N, p); the series form keeps it in log space where it gets small.
    const double log_tail = x < a + 1.0 ? log_scaled_series(a, x) : x + std::log(1.0 - gamma_q_fraction(a, x));
    if (log_tail <= log_eps) return N;
  }
  throw InvalidArgument("estimate_qbx_terms did not reach the tolerance");
}

}  // namespace qb2x

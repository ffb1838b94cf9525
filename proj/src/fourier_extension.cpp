#include "qb2x/fourier_extension.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "qb2x/errors.hpp"

namespace qb2x {

using cd = std::complex<double>;

cd FourierExtension::evaluate(cd z) const {
  const cd up = std::exp(cd(0.0, 1.0) * z);
  const cd down = 1.0 / up;
  cd sum = weights[P];
  cd ep = 1.0, em = 1.0;
  for (int p = 1; p <= P; ++p) {
    ep *= up;
    em *= down;
    sum += weights[P + p] * ep + weights[P - p] * em;
  }
  return sum;
}

FourierExtension FourierExtension::derivative() const {
  FourierExtension d(P);
  for (int p = -P; p <= P; ++p) d[p] = cd(0.0, p) * (*this)[p];
  d.fit_residual = fit_residual;
  d.rank = rank;
  return d;
}

double FourierExtension::weight_sum() const {
  double s = 0.0;
  for (const cd& w : weights) s += std::abs(w);
  return s;
}

double FourierExtension::max_conjugate_asymmetry() const {
  double worst = 0.0;
  for (int p = 0; p <= P; ++p) worst = std::max(worst, std::abs((*this)[-p] - std::conj((*this)[p])));
  return worst;
}

namespace {

std::vector<double> equispaced(int n) {
  std::vector<double> x(n);
  if (n == 1) {
    x[0] = 0.0;
    return x;
  }
  for (int j = 0; j < n; ++j) x[j] = -1.0 + 2.0 * j / (n - 1);
  return x;
}

int sample_count(int P, const FitOptions& o) { return o.oversampling * (2 * P + 1); }

// Truncated SVD of the real basis {1, cos px, sin px} sampled on the least-squares
// grid. Unknowns: [a_0, a_1..a_P, b_1..b_P]. The solve is applied as V (S^-1 (U^T f));
// forming the pseudo-inverse explicitly would smear the rounding of its 1e14-sized
// entries over every coefficient.
struct ExtensionSolver {
  std::vector<double> nodes;
  Eigen::MatrixXd U, V;  // kept columns only
  Eigen::VectorXd inv_sigma;
  int rank = 0;

  template <class Rhs>
  Eigen::MatrixXd solve(const Rhs& b) const {
    return V * (inv_sigma.asDiagonal() * (U.transpose() * b));
  }
};

std::shared_ptr<const ExtensionSolver> solver_for(int P, const FitOptions& o) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, double>, std::shared_ptr<const ExtensionSolver>> cache;
  const auto key = std::make_tuple(P, o.oversampling, o.svd_cutoff);
  std::lock_guard lock(mutex);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  auto solver = std::make_shared<ExtensionSolver>();
  solver->nodes = equispaced(sample_count(P, o));
  const int m = static_cast<int>(solver->nodes.size());
  Eigen::MatrixXd A(m, 2 * P + 1);
  for (int j = 0; j < m; ++j) {
    const double x = solver->nodes[j];
    A(j, 0) = 1.0;
    for (int p = 1; p <= P; ++p) {
      A(j, p) = std::cos(p * x);
      A(j, P + p) = std::sin(p * x);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double threshold = o.svd_cutoff * s(0);
  int r = 0;
  while (r < s.size() && s(r) > threshold) ++r;
  solver->rank = r;
  solver->U = svd.matrixU().leftCols(r);
  solver->V = svd.matrixV().leftCols(r);
  solver->inv_sigma = s.head(r).cwiseInverse();
  cache.emplace(key, solver);
  return solver;
}

FourierExtension from_real_coefficients(const Eigen::VectorXd& c, int P) {
  FourierExtension ext(P);
  ext[0] = c(0);
  for (int p = 1; p <= P; ++p) {
    ext[p] = cd(c(p), -c(P + p)) * 0.5;
    ext[-p] = cd(c(p), c(P + p)) * 0.5;
  }
  return ext;
}

void validate(int P, const FitOptions& o) {
  if (P < 0) throw InvalidArgument("Fourier extension needs P >= 0");
  if (!(o.svd_cutoff > 0.0 && o.svd_cutoff < 1.0)) throw InvalidArgument("svd_cutoff must lie in (0,1)");
  if (o.oversampling < 1 || o.check_density < 1) throw InvalidArgument("grid factors must be positive");
}

}  // namespace

double extension_residual(const FourierExtension& ext, const RealFunction& f, const FitOptions& options) {
  const auto grid = equispaced(options.check_density * sample_count(ext.P, options));
  double worst = 0.0;
  for (double x : grid) worst = std::max(worst, std::abs(ext(x) - f(x)));
  return worst;
}

FourierExtension fit_fourier_extension(const RealFunction& f, int P, const FitOptions& options) {
  validate(P, options);
  const auto solver = solver_for(P, options);
  Eigen::VectorXd samples(solver->nodes.size());
  for (std::size_t j = 0; j < solver->nodes.size(); ++j) {
    samples(j) = f(solver->nodes[j]);
    if (!std::isfinite(samples(j)))
      throw NonFiniteSample("density sample at x=" + std::to_string(solver->nodes[j]) + " is not finite");
  }
  FourierExtension ext = from_real_coefficients(solver->solve(samples).col(0), P);
  ext.rank = solver->rank;
  ext.fit_residual = extension_residual(ext, f, options);
  return ext;
}

ChebyshevFourierMap::ChebyshevFourierMap(int N, int P, const FitOptions& options)
    : N_(N), P_(P), options_(options) {
  if (N < 0) throw InvalidArgument("translation map needs N >= 0");
  if (P < 1) throw InvalidArgument("translation map needs P >= 1");
  validate(P, options);
  const auto solver = solver_for(P, options);
  rank_ = solver->rank;
  const int m = static_cast<int>(solver->nodes.size());
  // Chebyshev polynomials on the grid via the three-term recurrence.
  Eigen::MatrixXd T(m, N + 1);
  for (int j = 0; j < m; ++j) {
    const double x = solver->nodes[j];
    T(j, 0) = 1.0;
    if (N >= 1) T(j, 1) = x;
    for (int n = 2; n <= N; ++n) T(j, n) = 2.0 * x * T(j, n - 1) - T(j, n - 2);
  }
  const Eigen::MatrixXd real_coeffs = solver->solve(T);
  matrix_.resize(2 * P + 1, N + 1);
  for (int n = 0; n <= N; ++n) {
    const FourierExtension col = from_real_coefficients(real_coeffs.col(n), P);
    for (int i = 0; i < 2 * P + 1; ++i) matrix_(i, n) = col.weights[i];
  }
}

FourierExtension ChebyshevFourierMap::apply(const std::vector<double>& coeffs) const {
  if (static_cast<int>(coeffs.size()) > N_ + 1)
    throw InvalidArgument("polynomial degree exceeds the translation map's N");
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(N_ + 1);
  for (std::size_t n = 0; n < coeffs.size(); ++n) c(n) = coeffs[n];
  const Eigen::VectorXcd w = matrix_ * c;
  FourierExtension ext(P_);
  for (int i = 0; i < 2 * P_ + 1; ++i) ext.weights[i] = w(i);
  ext.rank = rank_;
  const RealPolynomial poly = RealPolynomial::chebyshev(coeffs);
  ext.fit_residual = extension_residual(ext, [&](double x) { return poly(x); }, options_);
  return ext;
}

FourierExtension ChebyshevFourierMap::apply(const RealPolynomial& poly) const {
  return apply(poly.to_chebyshev().coefficients());
}

ChebyshevFourierMap cheb_to_fourier_map(int N, int P, const FitOptions& options) {
  return ChebyshevFourierMap(N, P, options);
}

Antiderivative antiderivative_extension(const FourierExtension& ext) {
  Antiderivative out;
  out.oscillatory = FourierExtension(ext.P);
  out.oscillatory.rank = ext.rank;
  for (int p = -ext.P; p <= ext.P; ++p)
    if (p != 0) out.oscillatory[p] = ext[p] / cd(0.0, p);
  out.linear_coeff = ext[0].real();
  return out;
}

}  // namespace qb2x

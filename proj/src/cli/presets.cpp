#include <cmath>
#include <string>

#include "qb2x/errors.hpp"
#include "qb2x/experiment.hpp"

namespace qb2x {

namespace {

RealPolynomial quadratic_curve() { return RealPolynomial::monomial({0.0, 0.0, -0.1}); }
RealPolynomial quartic_curve() { return RealPolynomial::monomial({0.0, 0.0, -0.1, 0.0, -0.1}); }

// (2x^2 + 2x + 3) / 4 = T0 + T1/2 + T2/4
DensitySpec quadratic_density() { return DensitySpec::polynomial(RealPolynomial::chebyshev({1.0, 0.5, 0.25})); }

// (4x^3 + 4x^2 + x + 6) / 8
DensitySpec cubic_density() {
  return DensitySpec::polynomial(RealPolynomial::monomial({6.0 / 8.0, 1.0 / 8.0, 4.0 / 8.0, 4.0 / 8.0}));
}

ExperimentConfig make(PotentialKind kind, DensitySpec density, int P, int K, RealPolynomial curve = {}) {
  ExperimentConfig c;
  c.kind = kind;
  c.density = std::move(density);
  c.P = P;
  c.K = K;
  c.curve = std::move(curve);
  return c;
}

// Four densities of the straight-line figures: a) cos, b) e^cos, c) quadratic, d) cubic.
ExperimentConfig panel(PotentialKind kind, char which, int K) {
  switch (which) {
    case 'a': return make(kind, DensitySpec::named("cos"), 1, K);
    case 'b': return make(kind, DensitySpec::named("expcos"), 20, K);
    case 'c': return make(kind, quadratic_density(), 30, K);
    default: return make(kind, cubic_density(), 30, K);
  }
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig5a",  "fig5b",  "fig5c",   "fig5d",   "fig6k9",  "fig6k18", "fig6k27", "fig6k36",
          "fig7l",  "fig7r",  "fig8a",   "fig8b",   "fig8c",   "fig8d",   "fig9k9",  "fig9k18",
          "fig9k27", "fig9k36", "fig10l", "fig10r", "zero"};
}

ExperimentConfig preset_config(std::string_view name) {
  const std::string n(name);
  const auto D = PotentialKind::DLP, S = PotentialKind::SLP;
  if (n.size() == 5 && n.rfind("fig5", 0) == 0 && n[4] >= 'a' && n[4] <= 'd') return panel(D, n[4], 40);
  if (n.size() == 5 && n.rfind("fig8", 0) == 0 && n[4] >= 'a' && n[4] <= 'd') return panel(S, n[4], 40);
  for (int K : {9, 18, 27, 36}) {
    if (n == "fig6k" + std::to_string(K)) return make(D, quadratic_density(), 30, K);
    if (n == "fig9k" + std::to_string(K)) return make(S, quadratic_density(), 30, K);
  }
  if (n == "fig7l") return make(D, quadratic_density(), 30, 40, quadratic_curve());
  if (n == "fig7r") return make(D, quadratic_density(), 30, 50, quartic_curve());
  if (n == "fig10l") return make(S, quadratic_density(), 30, 18, quadratic_curve());
  if (n == "fig10r") return make(S, quadratic_density(), 30, 36, quadratic_curve());
  if (n == "zero") return make(D, DensitySpec::polynomial(RealPolynomial::monomial({0.0})), 30, 40);
  throw ParseError("unknown preset '" + n + "'");
}

}  // namespace qb2x

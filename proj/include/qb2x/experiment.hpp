#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qb2x/expansion.hpp"
#include "qb2x/fourier_extension.hpp"
#include "qb2x/geometry.hpp"
#include "qb2x/polynomial.hpp"

namespace qb2x {

/// Either a named density ("cos", "expcos", "zero") or an explicit polynomial.
struct DensitySpec {
  std::string preset;                 // empty when poly is set
  std::optional<RealPolynomial> poly;

  static DensitySpec named(std::string name);
  static DensitySpec polynomial(RealPolynomial p);

  RealFunction function() const;
  nlohmann::json to_json() const;
  static DensitySpec from_json(const nlohmann::json& j);
};

struct ExperimentConfig {
  PotentialKind kind = PotentialKind::DLP;
  DensitySpec density;
  RealPolynomial curve;  // height function s; zero for the straight segment
  LeafBox box{{0.0, -1.0 / 3.0}, 1.0 / 3.0, 1.0 / 3.0};
  int P = 30;
  std::optional<int> K;  // empty means "auto"
  double eps = 1e-12;
  int grid = 51;
  std::string out;
};

/// Keys: kind, density, curve, box, P, K (int or "auto"), eps, grid, out. Unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

std::vector<std::string> preset_names();
/// Throws ParseError for an unknown name.
ExperimentConfig preset_config(std::string_view name);

Qb2xRepresentation build_representation(const ExperimentConfig& config);

/// Reference value: closed form for straight DLP with a polynomial density, adaptive quadrature otherwise.
double reference_value(const ExperimentConfig& config, std::complex<double> w);

/// N x N targets over the box, each column clipped to stay 1e-3 below the curve.
std::vector<std::complex<double>> grid_targets(const BoundaryCurve& curve, const LeafBox& box, int n);

struct GridPoint {
  double x = 0.0, y = 0.0;
  double qb2x = 0.0, reference = 0.0;
  double abs_err = 0.0, log10_err = 0.0;  // log10 of max(abs_err, 1e-300)
};

struct ErrorMap {
  Qb2xRepresentation rep;
  std::vector<GridPoint> points;
  double max_abs_err = 0.0;
  double max_log10_err = 0.0;
  double median_log10_err = 0.0;
};

ErrorMap run_error_map(const ExperimentConfig& config);
/// Same, reusing precomputed reference values (one per grid target, in grid order).
ErrorMap run_error_map(const ExperimentConfig& config, const std::vector<double>& references);
std::vector<double> reference_grid(const ExperimentConfig& config);

void write_csv(std::ostream& os, const std::vector<GridPoint>& points);
nlohmann::json summary_json(const ExperimentConfig& config, const ErrorMap& map);

// Subcommands. Each returns the process exit code: 0 ok, 2 build/parse failure, 3 I/O failure.
int cmd_error_map(const ExperimentConfig& config, const std::string& save_rep, std::ostream& out,
                  std::ostream& err);
int cmd_kn(int p, double eps, bool sweep, std::ostream& out, std::ostream& err);
int cmd_extend(const DensitySpec& density, int P, const std::string& out_path, std::ostream& out,
               std::ostream& err);
int cmd_eval(const Qb2xRepresentation& rep, std::complex<double> w, std::ostream& out);

/// Formats with 17 significant digits ("%.17g").
std::string format_double(double v);

}  // namespace qb2x

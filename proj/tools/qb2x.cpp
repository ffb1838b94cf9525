// qb2x command-line front end: error maps, QBX term estimates, Fourier extensions and
// point evaluation of QB2X representations.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qb2x/errors.hpp"
#include "qb2x/experiment.hpp"
#include "qb2x/serialization.hpp"

namespace {

struct Source {
  std::string preset;
  std::string config;
  std::optional<int> K, P, grid;
  std::optional<double> eps;
  std::string out;
};

void add_source_flags(CLI::App* cmd, Source& s) {
  cmd->add_option("--preset", s.preset, "Named experiment (fig5a ... fig10r, zero)");
  cmd->add_option("--config", s.config, "Experiment config file (JSON)");
  cmd->add_option("--K", s.K, "Number of local terms (overrides the config)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--P", s.P, "Fourier extension order")->check(CLI::NonNegativeNumber);
  cmd->add_option("--eps", s.eps, "Target accuracy for automatic K")->check(CLI::Range(0.0, 1.0));
}

// Exit code convention: 2 for a bad config, 3 when the file cannot be read.
qb2x::ExperimentConfig load(const Source& s) {
  qb2x::ExperimentConfig c;
  if (!s.preset.empty() && !s.config.empty()) throw CLI::ValidationError("use either --preset or --config");
  if (!s.preset.empty()) {
    c = qb2x::preset_config(s.preset);
  } else if (!s.config.empty()) {
    std::ifstream f(s.config);
    if (!f) throw std::ios_base::failure("cannot read '" + s.config + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
      throw qb2x::ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    c = qb2x::config_from_json(j);
  } else {
    throw CLI::ValidationError("need --preset or --config");
  }
  if (s.K) c.K = *s.K;
  if (s.P) c.P = *s.P;
  if (s.eps) c.eps = *s.eps;
  if (s.grid) c.grid = *s.grid;
  if (!s.out.empty()) c.out = s.out;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QB2X representations of 2D Laplace layer potentials near a boundary"};
  app.require_subcommand(1);

  Source map_src;
  std::string save_rep;
  auto* error_map = app.add_subcommand("error-map", "Build a representation and compare it with the oracle on a grid");
  add_source_flags(error_map, map_src);
  error_map->add_option("--grid", map_src.grid, "Grid points per side (default 51)")->check(CLI::Range(1, 1001));
  error_map->add_option("--out", map_src.out, "CSV output path");
  error_map->add_option("--save-rep", save_rep, "Also write the representation as JSON");

  int kn_p = 0;
  double kn_eps = 1e-16;
  bool sweep = false;
  auto* kn = app.add_subcommand("kn", "Estimate the Taylor terms needed to re-expand e^{ipw}");
  kn->add_option("--p", kn_p, "Wave number")->required()->check(CLI::NonNegativeNumber);
  kn->add_option("--eps", kn_eps, "Tolerance")->check(CLI::Range(0.0, 1.0));
  kn->add_flag("--sweep", sweep, "CSV of p -> N for p = 0..p");

  std::string density = "cos";
  int ext_P = 0;
  std::string ext_out;
  auto* extend = app.add_subcommand("extend", "Fit a Fourier extension and print it as JSON");
  extend->add_option("--density", density, "cos, expcos, zero or {\"basis\": ..., \"coefficients\": [...]}");
  extend->add_option("--P", ext_P, "Extension order")->required()->check(CLI::NonNegativeNumber);
  extend->add_option("--out", ext_out, "Output path (default stdout)");

  Source eval_src;
  std::string rep_path;
  double x = 0.0, y = -1.0 / 3.0;
  auto* eval = app.add_subcommand("eval", "Evaluate a representation at one target");
  add_source_flags(eval, eval_src);
  eval->add_option("--rep", rep_path, "Representation JSON written by error-map --save-rep");
  eval->add_option("--x", x, "Target x");
  eval->add_option("--y", y, "Target y");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*error_map) return qb2x::cmd_error_map(load(map_src), save_rep, std::cout, std::cerr);
    if (*kn) return qb2x::cmd_kn(kn_p, kn_eps, sweep, std::cout, std::cerr);
    if (*extend) {
      const auto spec = density.empty() || density.front() != '{'
                            ? qb2x::DensitySpec::named(density)
                            : qb2x::DensitySpec::from_json(nlohmann::json::parse(density));
      return qb2x::cmd_extend(spec, ext_P, ext_out, std::cout, std::cerr);
    }
    if (*eval) {
      qb2x::Qb2xRepresentation rep;
      if (!rep_path.empty()) {
        std::ifstream f(rep_path);
        if (!f) throw std::ios_base::failure("cannot read '" + rep_path + "'");
        rep = qb2x::representation_from_json(nlohmann::json::parse(f));
      } else {
        rep = qb2x::build_representation(load(eval_src));
      }
      return qb2x::cmd_eval(rep, {x, y}, std::cout);
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const qb2x::Error& e) {
    std::cerr << e.name() << ": " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "ParseError: " << e.what() << '\n';
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

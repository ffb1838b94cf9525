#include "qb2x/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>

#include "qb2x/errors.hpp"
#include "qb2x/oracle.hpp"
#include "qb2x/serialization.hpp"

namespace qb2x {

using cd = std::complex<double>;
using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DensitySpec DensitySpec::named(std::string name) {
  if (name != "cos" && name != "expcos" && name != "zero")
    throw ParseError("unknown density preset '" + name + "' (expected cos, expcos or zero)");
  DensitySpec d;
  d.preset = std::move(name);
  return d;
}

DensitySpec DensitySpec::polynomial(RealPolynomial p) {
  DensitySpec d;
  d.poly = std::move(p);
  return d;
}

RealFunction DensitySpec::function() const {
  if (poly) return [p = *poly](double x) { return p(x); };
  if (preset == "cos") return [](double x) { return std::cos(x); };
  if (preset == "expcos") return [](double x) { return std::exp(std::cos(x)); };
  return [](double) { return 0.0; };
}

json DensitySpec::to_json() const {
  if (poly) return polynomial_to_json(*poly);
  return preset;
}

DensitySpec DensitySpec::from_json(const json& j) {
  if (j.is_string()) return named(j.get<std::string>());
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      if (key != "basis" && key != "coefficients") throw ParseError("unknown density key '" + key + "'");
    return polynomial(polynomial_from_json(j));
  }
  throw ParseError("density must be a preset name or {\"basis\", \"coefficients\"}");
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("experiment config must be a JSON object");
  static const std::set<std::string> known{"kind", "density", "curve", "box", "P", "K", "eps", "grid", "out"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ParseError("unknown config key '" + key + "'");

  ExperimentConfig c;
  if (!j.contains("kind") || !j["kind"].is_string()) throw ParseError("config needs a string 'kind'");
  c.kind = potential_kind_from_string(j["kind"].get<std::string>());
  if (!j.contains("density")) throw ParseError("config needs a 'density'");
  c.density = DensitySpec::from_json(j["density"]);
  if (j.contains("curve")) c.curve = polynomial_from_json(j["curve"]);
  if (j.contains("box")) {
    for (const auto& [key, value] : j["box"].items())
      if (key != "center" && key != "hx" && key != "hy") throw ParseError("unknown box key '" + key + "'");
    c.box = box_from_json(j["box"]);
  }
  if (j.contains("P")) {
    if (!j["P"].is_number_integer()) throw ParseError("'P' must be an integer");
    c.P = j["P"].get<int>();
  }
  if (j.contains("K")) {
    const json& k = j["K"];
    if (k.is_string() && k.get<std::string>() == "auto")
      c.K.reset();
    else if (k.is_number_integer())
      c.K = k.get<int>();
    else
      throw ParseError("'K' must be an integer or \"auto\"");
  }
  if (j.contains("eps")) {
    if (!j["eps"].is_number()) throw ParseError("'eps' must be a number");
    c.eps = j["eps"].get<double>();
  }
  if (j.contains("grid")) {
    if (!j["grid"].is_number_integer()) throw ParseError("'grid' must be an integer");
    c.grid = j["grid"].get<int>();
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw ParseError("'out' must be a string");
    c.out = j["out"].get<std::string>();
  }
  if (c.P < 0) throw ParseError("'P' must be >= 0");
  if (c.K && *c.K < 0) throw ParseError("'K' must be >= 0");
  if (!(c.eps > 0.0 && c.eps < 1.0)) throw ParseError("'eps' must lie in (0, 1)");
  if (c.grid < 1 || c.grid > 1001) throw ParseError("'grid' must lie in [1, 1001]");
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j{{"kind", std::string(to_string(c.kind))},
         {"density", c.density.to_json()},
         {"curve", polynomial_to_json(c.curve)},
         {"box", box_to_json(c.box)},
         {"P", c.P},
         {"eps", c.eps},
         {"grid", c.grid},
         {"out", c.out}};
  if (c.K)
    j["K"] = *c.K;
  else
    j["K"] = "auto";
  return j;
}

Qb2xRepresentation build_representation(const ExperimentConfig& config) {
  const BoundaryCurve curve(config.curve);
  RepOptions options;
  options.eps = config.eps;
  options.K = config.K;
  const bool dlp = config.kind == PotentialKind::DLP;
  if (config.density.poly) {
    return dlp ? build_dlp(*config.density.poly, curve, config.box, config.P, options)
               : build_slp(*config.density.poly, curve, config.box, config.P, options);
  }
  const RealFunction rho = config.density.function();
  return dlp ? build_dlp(rho, curve, config.box, config.P, options)
             : build_slp(rho, curve, config.box, config.P, options);
}

double reference_value(const ExperimentConfig& config, cd w) {
  const BoundaryCurve curve(config.curve);
  if (config.kind == PotentialKind::DLP && curve.is_straight() && config.density.poly)
    return oracle_dlp_straight(*config.density.poly, w).value;
  return oracle_adaptive(config.kind, config.density.function(), curve, w, 1e-13).value;
}

std::vector<cd> grid_targets(const BoundaryCurve& curve, const LeafBox& box, int n) {
  if (n < 1) throw InvalidArgument("grid needs at least one point per side");
  auto lerp = [n](double a, double b, int i) { return n == 1 ? 0.5 * (a + b) : a + (b - a) * i / (n - 1); };
  std::vector<cd> pts;
  pts.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double x = lerp(box.x_min(), box.x_max(), i);
    const double top = std::min(box.y_max(), curve.s(x) - 1e-3);
    for (int j = 0; j < n; ++j) pts.emplace_back(x, lerp(box.y_min(), top, j));
  }
  return pts;
}

std::vector<double> reference_grid(const ExperimentConfig& config) {
  const auto pts = grid_targets(BoundaryCurve(config.curve), config.box, config.grid);
  std::vector<double> ref;
  ref.reserve(pts.size());
  for (const cd& w : pts) ref.push_back(reference_value(config, w));
  return ref;
}

ErrorMap run_error_map(const ExperimentConfig& config, const std::vector<double>& references) {
  ErrorMap map;
  map.rep = build_representation(config);
  const auto pts = grid_targets(map.rep.curve, config.box, config.grid);
  if (references.size() != pts.size()) throw InvalidArgument("reference grid does not match the target grid");
  std::vector<double> logs;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    GridPoint g;
    g.x = pts[i].real();
    g.y = pts[i].imag();
    g.qb2x = eval_rep(map.rep, pts[i]);
    g.reference = references[i];
    g.abs_err = std::abs(g.qb2x - g.reference);
    g.log10_err = std::log10(std::max(g.abs_err, 1e-300));
    map.max_abs_err = std::max(map.max_abs_err, g.abs_err);
    logs.push_back(g.log10_err);
    map.points.push_back(g);
  }
  std::sort(logs.begin(), logs.end());
  map.max_log10_err = logs.back();
  const std::size_t m = logs.size();
  map.median_log10_err = m % 2 ? logs[m / 2] : 0.5 * (logs[m / 2 - 1] + logs[m / 2]);
  return map;
}

ErrorMap run_error_map(const ExperimentConfig& config) { return run_error_map(config, reference_grid(config)); }

void write_csv(std::ostream& os, const std::vector<GridPoint>& points) {
  os << "x,y,qb2x,reference,abs_err,log10_err\n";
  for (const GridPoint& g : points) {
    os << format_double(g.x) << ',' << format_double(g.y) << ',' << format_double(g.qb2x) << ','
       << format_double(g.reference) << ',' << format_double(g.abs_err) << ',' << format_double(g.log10_err)
       << '\n';
  }
}

json summary_json(const ExperimentConfig& config, const ErrorMap& map) {
  return {{"kind", std::string(to_string(config.kind))},
          {"K", map.rep.K},
          {"P", map.rep.P},
          {"r_max_upper", map.rep.r_max_upper},
          {"r_max_lower", map.rep.r_max_lower},
          {"depth_L", map.rep.depth_L},
          {"grid", config.grid},
          {"points", map.points.size()},
          {"max_abs_err", map.max_abs_err},
          {"max_log10_err", map.max_log10_err},
          {"median_log10_err", map.median_log10_err},
          {"csv", config.out}};
}

int cmd_error_map(const ExperimentConfig& config, const std::string& save_rep, std::ostream& out,
                  std::ostream& err) {
  ErrorMap map;
  try {
    map = run_error_map(config);
  } catch (const Error& e) {
    err << "error-map: " << e.name() << ": " << e.what() << '\n';
    return 2;
  }
  if (!config.out.empty()) {
    std::ofstream csv(config.out, std::ios::binary);
    if (csv) write_csv(csv, map.points);
    if (!csv) {
      err << "error-map: cannot write '" << config.out << "'\n";
      return 3;
    }
  }
  if (!save_rep.empty()) {
    std::ofstream f(save_rep, std::ios::binary);
    if (f) f << representation_to_json(map.rep).dump(2) << '\n';
    if (!f) {
      err << "error-map: cannot write '" << save_rep << "'\n";
      return 3;
    }
  }
  out << summary_json(config, map).dump(2) << '\n';
  return 0;
}

int cmd_kn(int p, double eps, bool sweep, std::ostream& out, std::ostream& err) {
  try {
    if (p < 0) throw InvalidArgument("p must be >= 0");
    if (sweep) {
      out << "p,N\n";
      for (int q = 0; q <= p; ++q) out << q << ',' << estimate_qbx_terms(q, eps) << '\n';
    } else {
      out << "N = " << estimate_qbx_terms(p, eps) << '\n';
    }
  } catch (const Error& e) {
    err << "kn: " << e.name() << ": " << e.what() << '\n';
    return 2;
  }
  return 0;
}

int cmd_extend(const DensitySpec& density, int P, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  FourierExtension ext;
  try {
    ext = fit_fourier_extension(density.function(), P);
  } catch (const Error& e) {
    err << "extend: " << e.name() << ": " << e.what() << '\n';
    return 2;
  }
  const std::string text = extension_to_json(ext).dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (f) f << text;
  if (!f) {
    err << "extend: cannot write '" << out_path << "'\n";
    return 3;
  }
  return 0;
}

int cmd_eval(const Qb2xRepresentation& rep, cd w, std::ostream& out) {
  const json j{{"x", w.real()}, {"y", w.imag()}, {"kind", std::string(to_string(rep.kind))},
               {"value", eval_rep(rep, w)}};
  out << j.dump(2) << '\n';
  return 0;
}

}  // namespace qb2x

#include "qb2x/serialization.hpp"

#include <string>

#include "qb2x/errors.hpp"

namespace qb2x {

using cd = std::complex<double>;

namespace {

json complex_to_json(cd v) { return json::array({v.real(), v.imag()}); }

cd complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("expected a [re, im] pair, got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_list(const std::vector<cd>& v) {
  json out = json::array();
  for (const cd& c : v) out.push_back(complex_to_json(c));
  return out;
}

std::vector<cd> complex_list_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of [re, im] pairs");
  std::vector<cd> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(complex_from_json(e));
  return out;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw ParseError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

int integer(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

json polynomial_to_json(const RealPolynomial& poly) {
  return {{"basis", std::string(to_string(poly.basis()))}, {"coefficients", poly.coefficients()}};
}

RealPolynomial polynomial_from_json(const json& j) {
  const json& basis = field(j, "basis");
  if (!basis.is_string()) throw ParseError("'basis' must be a string");
  const json& coeffs = field(j, "coefficients");
  if (!coeffs.is_array()) throw ParseError("'coefficients' must be an array");
  std::vector<double> c;
  for (const json& v : coeffs) {
    if (!v.is_number()) throw ParseError("polynomial coefficients must be numbers");
    c.push_back(v.get<double>());
  }
  return {basis_from_string(basis.get<std::string>()), std::move(c)};
}

json extension_to_json(const FourierExtension& ext) {
  return {{"P", ext.P}, {"weights", complex_list(ext.weights)}, {"fit_residual", ext.fit_residual}};
}

FourierExtension extension_from_json(const json& j) {
  FourierExtension ext(integer(j, "P"));
  if (ext.P < 0) throw ParseError("'P' must be >= 0");
  ext.weights = complex_list_from_json(field(j, "weights"));
  if (static_cast<int>(ext.weights.size()) != 2 * ext.P + 1) throw ParseError("expected 2P+1 weights");
  ext.fit_residual = number(j, "fit_residual");
  return ext;
}

json curve_to_json(const BoundaryCurve& curve) { return polynomial_to_json(curve.height()); }

BoundaryCurve curve_from_json(const json& j) { return BoundaryCurve(polynomial_from_json(j)); }

json box_to_json(const LeafBox& box) {
  return {{"center", {box.center.real(), box.center.imag()}}, {"hx", box.hx}, {"hy", box.hy}};
}

LeafBox box_from_json(const json& j) {
  LeafBox box;
  box.center = complex_from_json(field(j, "center"));
  box.hx = number(j, "hx");
  box.hy = number(j, "hy");
  return box;
}

json representation_to_json(const Qb2xRepresentation& rep) {
  json parts = json::array();
  for (const Constituent& c : rep.constituents) {
    parts.push_back({{"name", c.name},
                     {"factor", complex_to_json(c.factor)},
                     {"density", extension_to_json(c.density)},
                     {"local_coeffs", complex_list(c.rep.local_coeffs)},
                     {"pw_weights", complex_list(c.rep.pw_weights)}});
  }
  return {{"kind", std::string(to_string(rep.kind))},
          {"center", complex_to_json(rep.w0)},
          {"K", rep.K},
          {"P", rep.P},
          {"local_coeffs", complex_list(rep.local_coeffs)},
          {"pw_weights", complex_list(rep.pw_weights)},
          {"boundary_coeffs", complex_list(rep.boundary_coeffs)},
          {"curve", curve_to_json(rep.curve)},
          {"box", box_to_json(rep.box)},
          {"scale", rep.scale},
          {"r_max_upper", rep.r_max_upper},
          {"r_max_lower", rep.r_max_lower},
          {"target_eps", rep.target_eps},
          {"depth_L", rep.depth_L},
          {"constituents", parts}};
}

Qb2xRepresentation representation_from_json(const json& j) {
  Qb2xRepresentation rep;
  const json& kind = field(j, "kind");
  if (!kind.is_string()) throw ParseError("'kind' must be a string");
  rep.kind = potential_kind_from_string(kind.get<std::string>());
  rep.w0 = complex_from_json(field(j, "center"));
  rep.K = integer(j, "K");
  rep.P = integer(j, "P");
  rep.local_coeffs = complex_list_from_json(field(j, "local_coeffs"));
  rep.pw_weights = complex_list_from_json(field(j, "pw_weights"));
  if (static_cast<int>(rep.local_coeffs.size()) != rep.K + 1) throw ParseError("expected K+1 local coefficients");
  if (static_cast<int>(rep.pw_weights.size()) != rep.P) throw ParseError("expected P plane-wave weights");
  if (j.contains("boundary_coeffs")) rep.boundary_coeffs = complex_list_from_json(j.at("boundary_coeffs"));
  rep.curve = curve_from_json(field(j, "curve"));
  rep.box = box_from_json(field(j, "box"));
  rep.scale = number(j, "scale");
  rep.r_max_upper = number(j, "r_max_upper");
  rep.r_max_lower = number(j, "r_max_lower");
  rep.target_eps = number(j, "target_eps");
  rep.depth_L = number(j, "depth_L");
  if (j.contains("constituents")) {
    for (const json& c : j.at("constituents")) {
      Constituent part;
      const json& name = field(c, "name");
      if (!name.is_string()) throw ParseError("constituent 'name' must be a string");
      part.name = name.get<std::string>();
      part.factor = complex_from_json(field(c, "factor"));
      part.density = extension_from_json(field(c, "density"));
      part.rep.local_coeffs = complex_list_from_json(field(c, "local_coeffs"));
      part.rep.pw_weights = complex_list_from_json(field(c, "pw_weights"));
      rep.constituents.push_back(std::move(part));
    }
  }
  return rep;
}

json contour_to_json(const Contour& contour) {
  json nodes = json::array();
  for (const QuadratureNode& n : contour.nodes())
    nodes.push_back({{"z", complex_to_json(n.z)}, {"weight", complex_to_json(n.weight)}});
  return {{"kind", contour.kind() == ContourKind::UpperSemicircle ? "upper" : "lower"},
          {"depth_L", contour.depth_L()},
          {"panels", contour.panel_count()},
          {"order", contour.order()},
          {"nodes", nodes}};
}

}  // namespace qb2x

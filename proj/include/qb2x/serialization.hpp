#pragma once

#include <json.hpp>

#include "qb2x/contour.hpp"
#include "qb2x/expansion.hpp"
#include "qb2x/fourier_extension.hpp"
#include "qb2x/geometry.hpp"
#include "qb2x/polynomial.hpp"

namespace qb2x {

using nlohmann::json;

// {"basis": "chebyshev"|"monomial", "coefficients": [...]}
json polynomial_to_json(const RealPolynomial& poly);
RealPolynomial polynomial_from_json(const json& j);

// {"P": int, "weights": [[re, im], ...] for p = -P..P, "fit_residual": float}
json extension_to_json(const FourierExtension& ext);
FourierExtension extension_from_json(const json& j);

json curve_to_json(const BoundaryCurve& curve);
BoundaryCurve curve_from_json(const json& j);

// {"center": [x, y], "hx": ..., "hy": ...}
json box_to_json(const LeafBox& box);
LeafBox box_from_json(const json& j);

json representation_to_json(const Qb2xRepresentation& rep);
Qb2xRepresentation representation_from_json(const json& j);

/// Debug dump: one {"z": [re, im], "weight": [re, im]} per quadrature node.
json contour_to_json(const Contour& contour);

}  // namespace qb2x

#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "galcas/polynomial.hpp"

namespace galcas::exact {

/// Canonical polynomial JSON: a list of {"coeff": "num/den", "monomial": {name: power}}.
/// Terms are ordered by total degree, then lexicographically by their
/// (name, power) lists with names sorted; monomial keys are sorted by name.
nlohmann::json poly_to_json(const MultiPoly& p, const VarNames& names);

/// Inverse of poly_to_json. Throws std::invalid_argument on unknown names.
MultiPoly poly_from_json(const nlohmann::json& j, const std::map<std::string, VarId>& ids);

}  // namespace galcas::exact

#include "galcas/serialize.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace galcas::exact {

nlohmann::json poly_to_json(const MultiPoly& p, const VarNames& names) {
  using Named = std::vector<std::pair<std::string, std::uint32_t>>;
  std::vector<std::tuple<std::uint32_t, Named, const Rational*>> rows;
  rows.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Named named;
    for (const auto& [v, e] : m.factors()) named.emplace_back(var_name(v, &names), e);
    std::sort(named.begin(), named.end());
    rows.emplace_back(m.degree(), std::move(named), &c);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [deg, named, c] : rows) {
    nlohmann::json mono = nlohmann::json::object();
    for (const auto& [n, e] : named) mono[n] = e;
    out.push_back({{"coeff", to_string(*c)}, {"monomial", mono}});
  }
  return out;
}

MultiPoly poly_from_json(const nlohmann::json& j, const std::map<std::string, VarId>& ids) {
  if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be a list");
  MultiPoly p;
  for (const auto& t : j) {
    std::vector<Monomial::Factor> fs;
    for (const auto& [name, power] : t.at("monomial").items()) {
      auto it = ids.find(name);
      if (it == ids.end()) throw std::invalid_argument("unknown variable '" + name + "'");
      fs.emplace_back(it->second, power.get<std::uint32_t>());
    }
    p.add_term(Monomial(std::move(fs)), parse_rational(t.at("coeff").get<std::string>()));
  }
  return p;
}

}  // namespace galcas::exact

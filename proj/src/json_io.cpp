#include "torq/json_io.hpp"

#include <stdexcept>

namespace torq {

Json series_to_json(const FormalSeries& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(coeff_string(c));
  return {{"order", s.order()}, {"coeffs", coeffs}};
}

FormalSeries series_from_json(const Json& j) {
  const int order = j.at("order").get<int>();
  const auto& coeffs = j.at("coeffs");
  if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != order + 1)
    throw std::invalid_argument("series json: coeffs must have order+1 entries");
  FormalSeries s(order);
  for (int k = 0; k <= order; ++k) s[k] = parse_coeff(coeffs[k].get<std::string>());
  return s;
}

Json map_to_json(const CombMap& m) {
  Json j = {{"alpha", m.alpha_array()}, {"sigma", m.sigma_array()}};
  if (m.has_labels()) j["labels"] = m.labels();
  return j;
}

CombMap map_from_json(const Json& j) {
  auto alpha = j.at("alpha").get<std::vector<int>>();
  auto sigma = j.at("sigma").get<std::vector<int>>();
  if (j.contains("labels")) return CombMap(std::move(alpha), std::move(sigma), j["labels"].get<std::vector<int>>());
  return CombMap(std::move(alpha), std::move(sigma));
}

Json one_tree_to_json(const LabeledOneTree& t) {
  Json j = map_to_json(t.map);
  j["root"] = t.root;
  return j;
}

LabeledOneTree one_tree_from_json(const Json& j) {
  LabeledOneTree t{map_from_json(j), j.value("root", 0)};
  if (t.root < 0 || t.root >= t.map.half_edges()) throw std::invalid_argument("root half-edge out of range");
  return t;
}

}  // namespace torq

#pragma once

#include "torq/codec.hpp"
#include "torq/series.hpp"

#include <json.hpp>

namespace torq {

using Json = nlohmann::json;

// {"order": N, "coeffs": ["p/q", ...]}
Json series_to_json(const FormalSeries& s);
FormalSeries series_from_json(const Json& j);

// {"alpha": [...], "sigma": [...], "labels": [...]}; labels omitted when absent
Json map_to_json(const CombMap& m);
CombMap map_from_json(const Json& j);

// map plus "root"
Json one_tree_to_json(const LabeledOneTree& t);
LabeledOneTree one_tree_from_json(const Json& j);

}  // namespace torq

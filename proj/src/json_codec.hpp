#pragma once

// JSON encoding shared by the config reader and the summary writer.

#include "hystrd/config.hpp"

#include <json.hpp>

#include <string>

namespace hystrd::detail {

using json = nlohmann::json;

json curve_to_json(const CurveSpec& curve);
CurveSpec curve_from_json(const json& j, const std::string& path);

json supply_to_json(const SupplySpec& supply);
SupplySpec supply_from_json(const json& j, const std::string& path);

json config_to_json(const RunConfig& config);
RunConfig config_from_json(const json& j);

} // namespace hystrd::detail

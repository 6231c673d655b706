#pragma once

#include <string>

#include <json.hpp>

#include "driftlab/entropy_shadows.hpp"
#include "driftlab/experiments.hpp"
#include "driftlab/models.hpp"
#include "driftlab/walk.hpp"

namespace driftlab {

inline constexpr const char* kToolName = "driftlab";
inline constexpr const char* kToolVersion = "1.0.0";

nlohmann::json tool_stamp();

nlohmann::json to_json(const GroupElement& g);  // [[a,b],[c,d]]
GroupElement group_element_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Measure& mu);  // {"atoms":[{"g":...,"p":...},...]}
Measure measure_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FlatTorusPoint& x);
nlohmann::json to_json(const FrickePoint& x);

nlohmann::json to_json(const Slope& s);  // "p/q"
nlohmann::json to_json(const DriftEstimate& e);
nlohmann::json to_json(const SweepReport& r);
nlohmann::json to_json(const SearchConfig& c);
SearchConfig search_config_from_json(const nlohmann::json& j);

void write_json_file(const nlohmann::json& j, const std::string& path);
nlohmann::json read_json_file(const std::string& path);

}  // namespace driftlab

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvqa/cost.hpp"
#include "pvqa/experiments.hpp"
#include "pvqa/optimize.hpp"

namespace pvqa {

using json = nlohmann::ordered_json;

json to_json(const CountsRecord& rec);
json to_json(const TwoQuquartState& state);
json to_json(const OptRun& run);
json to_json(const FringeScan& scan);
json to_json(const DimCertResult& res);

/// %.17g rendering used in the CSV outputs so values round-trip.
std::string fmt17(double v);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const json& j);
void append_jsonl(const std::filesystem::path& path, const json& j);
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Emits every bundled data table (phase settings, molecular coefficients,
/// factoring weights) as JSON files under dir.
void dump_bundled_tables(const std::filesystem::path& dir);

}  // namespace pvqa

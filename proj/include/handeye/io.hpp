#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "handeye/synth.hpp"

namespace handeye {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON pose record {"q": [w, x, y, z], "t": [x, y, z]}.
nlohmann::json dq_to_json(const DualQuat& q);
DualQuat dq_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const ScenarioConfig& config);
ScenarioConfig config_from_json(const nlohmann::json& j);

// JSON Lines: a header record {format_version, ground_truth, config}
// followed by one record per pair {a, b, w}.
void write_dataset(std::ostream& out, const Dataset& ds);
void write_dataset_file(const std::string& path, const Dataset& ds);

struct LoadedDataset {
  std::vector<MotionPair> pairs;
  std::optional<DualQuat> ground_truth;
  std::optional<ScenarioConfig> config;
};

LoadedDataset read_dataset(std::istream& in);
LoadedDataset read_dataset_file(const std::string& path);

}  // namespace handeye

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "core/metric.hpp"
#include "core/quadrature.hpp"

namespace wlab::config {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kOutputDirEnv = "WLAB_OUTPUT_DIR";

// Fills defaults and validates a metric catalog entry.
json normalize_metric(const json& entry);
ConformalMetric build_metric(const json& entry);

struct ExperimentConfig {
  std::string experiment = "custom";  // E1..E6 or custom
  std::string task = "critical-point";  // custom runs: adm, com, hawking, g-eval, critical-point, trace, scan
  json metric;
  std::vector<double> lambdas;
  double delta = 0.25;
  quad::Resolution resolution;
  std::vector<double> flux_radii;
  std::vector<Vec3> seeds;
  double scan_spacing = 0.05;
  Vec3 xi = Vec3::Zero();      // g-eval and hawking center (in units of lambda)
  int draws = 500;             // E4 random draws
  std::string output_dir;
};

bool known_experiment(const std::string& id);
ExperimentConfig default_config(const std::string& id);

// Starts from the defaults of the experiment named in `doc` (or `id_override`)
// and applies every field present in `doc`.
ExperimentConfig parse_config(const json& doc, const std::string& id_override = "");

json to_json(const ExperimentConfig& cfg);

}  // namespace wlab::config

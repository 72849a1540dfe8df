#pragma once

#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/solver.hpp"

namespace wlab::experiments {

using config::json;

struct Assertion {
  std::string name;
  std::string relation;  // "<=" or ">="
  double measured = 0.0;
  double bound = 0.0;
  bool passed = false;
};

struct TraceRow {
  double lambda = 0.0;
  Vec3 xi = Vec3::Zero();
  Vec3 barycenter = Vec3::Zero();
  double g = 0.0;
  double hawking = 0.0;
};

struct ScanRow {
  std::string label;
  Vec3 xi = Vec3::Zero();
  double grad_norm = 0.0;
};

struct ExperimentResult {
  json config;
  json records = json::object();
  std::vector<Assertion> assertions;
  std::vector<TraceRow> traces;
  std::vector<ScanRow> scan;
  std::vector<std::string> errors;
  double wall_seconds = 0.0;
  std::string timestamp;

  bool all_passed() const;
};

ExperimentResult run_experiment(const config::ExperimentConfig& cfg);

json to_json(const ExperimentResult& r);
// Writes result.json, traces.csv and (when present) scan.csv into `dir`.
void emit_report(const ExperimentResult& r, const std::string& dir);

std::string traces_csv(const ExperimentResult& r);
std::string scan_csv(const ExperimentResult& r);

json to_json(const Vec3& v);
json to_json(const solver::CriticalPoint& p);
json to_json(const flux::FluxReport& f);
json to_json(const reduced::ReducedEnergyEval& e);
json to_json(const solver::ComComparison& c);
json to_json(const solver::BranchTrace& t);
json to_json(const solver::ScanResult& s, bool with_samples);
json to_json(const solver::SeedFailure& f);

}  // namespace wlab::experiments

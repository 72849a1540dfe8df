// Command-line front end. Everything numerical goes through the C API in
// wlab/wlab.h; this file only assembles configuration documents.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wlab/wlab.h"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kPass = 0, kAssertionFailed = 1, kUsage = 2, kRuntime = 3 };

struct Common {
  std::string config_path;
  std::string out_dir;
  int threads = 0;
  std::string resolution;
  std::vector<double> lambdas;
  std::string metric;
  std::vector<double> xi;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out_dir, "Output directory (default: $WLAB_OUTPUT_DIR/<id> or ./wlab-out/<id>)");
  cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--resolution", c.resolution, "Surface quadrature as n_polar,n_azimuth");
  cmd->add_option("--lambdas", c.lambdas, "Area radii, overriding the configuration");
  cmd->add_option("--metric", c.metric, "Metric catalog entry as inline JSON");
  cmd->add_option("--xi", c.xi, "Translation parameter (three numbers)")->expected(3);
  cmd->add_flag("--quiet", c.quiet, "Do not print the result document");
}

json load_config(const Common& c) {
  json doc = json::object();
  if (!c.config_path.empty()) {
    std::ifstream in(c.config_path);
    if (!in) throw std::runtime_error("cannot read " + c.config_path);
    doc = json::parse(in);
  }
  if (!c.resolution.empty()) {
    std::stringstream s(c.resolution);
    int np = 0, na = 0;
    char comma = 0;
    if (!(s >> np >> comma >> na) || comma != ',' || !s.eof())
      throw CLI::ValidationError("--resolution", "expected n_polar,n_azimuth");
    doc["resolution"] = {{"n_polar", np}, {"n_azimuth", na}};
  }
  if (!c.lambdas.empty()) doc["lambdas"] = c.lambdas;
  if (!c.metric.empty()) doc["metric"] = json::parse(c.metric);
  if (!c.xi.empty()) doc["xi"] = c.xi;
  return doc;
}

std::string output_dir(const Common& c, const json& doc, const std::string& id) {
  if (!c.out_dir.empty()) return c.out_dir;
  if (doc.contains("output_dir") && doc["output_dir"].is_string() && !doc["output_dir"].get<std::string>().empty())
    return doc["output_dir"].get<std::string>();
  const char* env = std::getenv("WLAB_OUTPUT_DIR");
  const std::string base = env && *env ? env : "wlab-out";
  return base + "/" + id;
}

int report_error(wlab_status s) {
  std::cerr << "error (" << wlab_status_name(s) << "): " << wlab_last_error() << "\n";
  return s == WLAB_ERR_CONFIG || s == WLAB_ERR_INVALID_ARGUMENT ? kUsage : kRuntime;
}

void print_summary(const json& result, const std::string& dir) {
  for (const auto& a : result["assertions"]) {
    std::cout << (a["passed"].get<bool>() ? "PASS " : "FAIL ") << a["name"].get<std::string>() << "  measured "
              << a["measured"].dump() << ' ' << a["relation"].get<std::string>() << ' ' << a["bound"].dump() << "\n";
  }
  for (const auto& e : result["errors"]) std::cout << "ERROR " << e.get<std::string>() << "\n";
  std::cout << "report written to " << dir << "\n";
}

int run(const Common& c, const std::string& id, const std::string& task) {
  if (c.threads > 0 && wlab_set_threads(c.threads) != WLAB_OK) return report_error(WLAB_ERR_INVALID_ARGUMENT);
  json doc;
  try {
    doc = load_config(c);
  } catch (const std::exception& e) {
    std::cerr << "error (config): " << e.what() << "\n";
    return kUsage;
  }
  if (!task.empty()) {
    doc["experiment"] = "custom";
    doc["task"] = task;
  }
  const std::string label = task.empty() ? id : task;
  const std::string dir = output_dir(c, doc, label);
  int passed = 0;
  char* text = nullptr;
  const wlab_status s = wlab_run(doc.dump().c_str(), task.empty() ? id.c_str() : nullptr, dir.c_str(), &passed, &text);
  if (s != WLAB_OK) return report_error(s);
  const json result = json::parse(text);
  wlab_string_free(text);
  if (!c.quiet && !task.empty()) std::cout << result["records"].dump(2) << "\n";
  print_summary(result, dir);
  return passed ? kPass : kAssertionFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced Willmore energy laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", wlab_version());

  Common common;
  std::string experiment_id;

  auto* exp = app.add_subcommand("experiment", "Run a registered experiment (E1..E6) and check its assertions");
  exp->add_option("id", experiment_id, "Experiment id")->required()->check(CLI::IsMember({"E1", "E2", "E3", "E4", "E5", "E6"}));
  add_common(exp, common);

  const std::vector<std::pair<std::string, std::string>> tasks{
      {"adm", "ADM mass flux integrals at the given radii"},
      {"com", "Hamiltonian center of mass flux integrals"},
      {"hawking", "Hawking mass of the sphere S_lambda(lambda xi)"},
      {"g-eval", "Reduced energy and gradient at xi"},
      {"critical-point", "Critical points of the reduced energy"},
      {"trace", "Follow the critical point branch over the lambdas"},
      {"scan", "Stationary-point scan of the gradient norm over the xi ball"}};
  std::vector<CLI::App*> task_cmds;
  for (const auto& [name, help] : tasks) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, common);
    task_cmds.push_back(cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (exp->parsed()) return run(common, experiment_id, "");
    for (std::size_t i = 0; i < task_cmds.size(); ++i)
      if (task_cmds[i]->parsed()) return run(common, "custom", tasks[i].first);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}

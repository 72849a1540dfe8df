#include "core/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/catalog.hpp"

namespace wlab::config {
namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::config, what); }

template <class T>
T get_or(const json& j, const char* key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    bad(std::string("field '") + key + "': " + e.what());
  }
}

Vec3 to_vec3(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) bad(std::string(what) + " must be an array of 3 numbers");
  Vec3 v;
  for (int k = 0; k < 3; ++k) {
    if (!j[k].is_number()) bad(std::string(what) + " must be an array of 3 numbers");
    v[k] = j[k].get<double>();
  }
  return v;
}

json from_vec3(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

std::array<double, 4> amplitudes(const json& j) {
  const json a = j.contains("a") ? j.at("a") : json::array({0.0, 0.0, 0.0, 0.0});
  if (!a.is_array() || a.size() != 4) bad("shell amplitudes 'a' must be an array of 4 numbers");
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    if (!a[i].is_number()) bad("shell amplitudes 'a' must be numbers");
    out[i] = a[i].get<double>();
  }
  return out;
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) bad("unknown field '" + it.key() + "' in " + where);
}

std::shared_ptr<const Perturbation> leaf_perturbation(const json& n) {
  const std::string type = n.at("type").get<std::string>();
  const auto a = amplitudes(n);
  if (type == "shell") {
    return std::make_shared<ShellSumPerturbation>(
        std::vector<ShellParams>{ShellParams{n.at("k").get<int>(), n.at("l").get<int>(), a}});
  }
  if (type == "shell-sum") {
    return std::make_shared<ShellSumPerturbation>(shell_family(n.at("k").get<int>(), n.at("i_min").get<int>(),
                                                               n.at("i_max").get<int>(), a,
                                                               n.at("diagonal").get<bool>()));
  }
  bad("glue pieces must be shell or shell-sum entries");
}

}  // namespace

json normalize_metric(const json& entry) {
  if (!entry.is_object() || !entry.contains("type") || !entry.at("type").is_string())
    bad("metric entry needs a string 'type'");
  const std::string type = entry.at("type").get<std::string>();
  json n;
  n["type"] = type;
  if (type == "schwarzschild") {
    reject_unknown(entry, {"type", "mass", "center"}, "schwarzschild");
    n["mass"] = get_or(entry, "mass", 2.0);
    n["center"] = from_vec3(entry.contains("center") ? to_vec3(entry.at("center"), "center") : Vec3::Zero());
  } else if (type == "flat") {
    reject_unknown(entry, {"type"}, "flat");
  } else if (type == "com-oscillator") {
    reject_unknown(entry, {"type", "k_min", "k_max"}, "com-oscillator");
    n["k_min"] = get_or(entry, "k_min", 0);
    n["k_max"] = get_or(entry, "k_max", 8);
  } else if (type == "shell") {
    reject_unknown(entry, {"type", "k", "l", "a"}, "shell");
    n["k"] = get_or(entry, "k", 2);
    n["l"] = get_or(entry, "l", 2);
    const auto a = amplitudes(entry);
    n["a"] = json::array({a[0], a[1], a[2], a[3]});
  } else if (type == "shell-sum") {
    reject_unknown(entry, {"type", "k", "i_min", "i_max", "a", "diagonal"}, "shell-sum");
    n["k"] = get_or(entry, "k", 2);
    n["i_min"] = get_or(entry, "i_min", 1);
    n["i_max"] = get_or(entry, "i_max", 3);
    n["diagonal"] = get_or(entry, "diagonal", false);
    const auto a = amplitudes(entry);
    n["a"] = json::array({a[0], a[1], a[2], a[3]});
  } else if (type == "glued-slow-divergence") {
    reject_unknown(entry, {"type", "pieces"}, "glued-slow-divergence");
    if (!entry.contains("pieces") || !entry.at("pieces").is_array() || entry.at("pieces").empty())
      bad("glued metric needs a non-empty 'pieces' array");
    json pieces = json::array();
    for (const auto& p : entry.at("pieces")) {
      if (!p.is_object() || !p.contains("leaf") || !p.contains("rho") || !p.contains("theta"))
        bad("each glue piece needs 'leaf', 'rho' and 'theta'");
      reject_unknown(p, {"leaf", "rho", "theta"}, "glue piece");
      const json leaf = normalize_metric(p.at("leaf"));
      if (leaf["type"] != "shell" && leaf["type"] != "shell-sum") bad("glue leaves must be shell or shell-sum");
      pieces.push_back(json{{"leaf", leaf}, {"rho", get_or(p, "rho", 0.0)}, {"theta", get_or(p, "theta", 0.0)}});
    }
    n["pieces"] = pieces;
  } else {
    bad("unknown metric type '" + type + "'");
  }
  return n;
}

ConformalMetric build_metric(const json& entry) {
  const json n = normalize_metric(entry);
  const std::string type = n.at("type").get<std::string>();
  try {
    if (type == "schwarzschild") return ConformalMetric::schwarzschild(n.at("mass").get<double>(), to_vec3(n.at("center"), "center"));
    if (type == "flat") return ConformalMetric::flat();
    if (type == "com-oscillator")
      return {2.0, Vec3::Zero(),
              std::make_shared<OscillatorPerturbation>(n.at("k_min").get<int>(), n.at("k_max").get<int>())};
    if (type == "shell" || type == "shell-sum") return {2.0, Vec3::Zero(), leaf_perturbation(n)};
    std::vector<GluePiece> pieces;
    for (const auto& p : n.at("pieces"))
      pieces.push_back({leaf_perturbation(p.at("leaf")), p.at("rho").get<double>(), p.at("theta").get<double>()});
    return {2.0, Vec3::Zero(), std::make_shared<GluedPerturbation>(std::move(pieces))};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config) throw;
    bad(std::string("invalid metric parameters: ") + e.what());
  }
}

bool known_experiment(const std::string& id) {
  static const std::set<std::string> ids{"E1", "E2", "E3", "E4", "E5", "E6", "custom"};
  return ids.count(id) > 0;
}

ExperimentConfig default_config(const std::string& id) {
  if (!known_experiment(id)) bad("unknown experiment '" + id + "'");
  ExperimentConfig c;
  c.experiment = id;
  c.task = id == "custom" ? "critical-point" : "experiment";
  if (id == "E1" || id == "custom") {
    c.metric = normalize_metric({{"type", "schwarzschild"}});
    c.lambdas = id == "E1" ? std::vector<double>{1e2, 1e3, 1e4} : std::vector<double>{1e3};
    c.flux_radii = {1e3, 2e3, 4e3};
  } else if (id == "E2") {
    c.metric = normalize_metric({{"type", "com-oscillator"}, {"k_min", 0}, {"k_max", 8}});
    c.lambdas = {4e2, 7e2, 4e3, 7e3};
    c.flux_radii = {1e3, 2e3, 4e3};
  } else if (id == "E3") {
    c.metric = normalize_metric({{"type", "shell"}, {"k", 2}, {"l", 2}, {"a", {1.0, 4.0, 4.0, 1.0}}});
    c.lambdas = {4e4};
  } else if (id == "E4") {
    c.metric = normalize_metric({{"type", "shell"}, {"k", 2}, {"l", 2}, {"a", {1.0, 4.0, 4.0, 0.0}}});
    c.lambdas = {1.0};
  } else if (id == "E5") {
    c.metric = normalize_metric({{"type", "shell-sum"}, {"k", 2}, {"i_max", 3}, {"a", {1.0, 4.0, 4.0, 10.0}}});
    c.lambdas = {4e4};
  } else if (id == "E6") {
    c.metric = normalize_metric({{"type", "shell-sum"}, {"k", 3}, {"i_max", 3}, {"a", {2.0, 3.0, 5.0, 0.0}}});
    c.lambdas = {9e4};
    c.delta = 0.02;
    for (double t : {0.8, 0.85, 0.9, 0.95}) c.seeds.push_back(Vec3(0.0, 0.0, t));
  }
  return c;
}

ExperimentConfig parse_config(const json& doc, const std::string& id_override) {
  if (!doc.is_object()) bad("config must be a JSON object");
  reject_unknown(doc, {"schema_version", "experiment", "task", "metric", "lambdas", "delta", "resolution",
                       "flux_radii", "seeds", "scan_spacing", "xi", "draws", "output_dir"},
                 "config");
  if (doc.contains("schema_version") && get_or(doc, "schema_version", 0) != kSchemaVersion)
    bad("unsupported schema_version");
  const std::string id = !id_override.empty() ? id_override : get_or<std::string>(doc, "experiment", "custom");
  ExperimentConfig c = default_config(id);
  if (doc.contains("task")) c.task = get_or<std::string>(doc, "task", c.task);
  if (doc.contains("metric")) c.metric = normalize_metric(doc.at("metric"));
  if (doc.contains("lambdas")) c.lambdas = get_or<std::vector<double>>(doc, "lambdas", {});
  c.delta = get_or(doc, "delta", c.delta);
  if (doc.contains("resolution")) {
    const json& r = doc.at("resolution");
    if (!r.is_object()) bad("resolution must be an object");
    reject_unknown(r, {"n_polar", "n_azimuth"}, "resolution");
    c.resolution.n_polar = get_or(r, "n_polar", c.resolution.n_polar);
    c.resolution.n_azimuth = get_or(r, "n_azimuth", c.resolution.n_azimuth);
  }
  if (doc.contains("flux_radii")) c.flux_radii = get_or<std::vector<double>>(doc, "flux_radii", {});
  if (doc.contains("seeds")) {
    if (!doc.at("seeds").is_array()) bad("seeds must be an array");
    c.seeds.clear();
    for (const auto& s : doc.at("seeds")) c.seeds.push_back(to_vec3(s, "seed"));
  }
  c.scan_spacing = get_or(doc, "scan_spacing", c.scan_spacing);
  if (doc.contains("xi")) c.xi = to_vec3(doc.at("xi"), "xi");
  c.draws = get_or(doc, "draws", c.draws);
  c.output_dir = get_or<std::string>(doc, "output_dir", c.output_dir);

  static const std::set<std::string> tasks{"experiment", "adm", "com", "hawking", "g-eval", "critical-point", "trace", "scan"};
  if (!tasks.count(c.task)) bad("unknown task '" + c.task + "'");
  if (c.experiment != "custom" && c.task != "experiment") bad("registered experiments take task 'experiment'");
  if (c.experiment == "custom" && c.task == "experiment") bad("custom runs need a concrete task");
  for (double l : c.lambdas)
    if (!(l > 2.0) && c.experiment != "E4") bad("lambda values must exceed 2");
  for (std::size_t i = 1; i < c.lambdas.size(); ++i)
    if (!(c.lambdas[i] > c.lambdas[i - 1])) bad("lambda values must be strictly increasing");
  if (c.lambdas.empty()) bad("at least one lambda is required");
  if (!(c.delta > 0.0 && c.delta < 0.5)) bad("delta must lie in (0, 1/2)");
  if (c.resolution.n_polar < 2 || c.resolution.n_azimuth < 3) bad("resolution must be positive (n_polar >= 2, n_azimuth >= 3)");
  if (!(c.scan_spacing > 0.0)) bad("scan_spacing must be positive");
  if (c.draws < 1) bad("draws must be positive");
  for (const auto& s : c.seeds)
    if (!(s.norm() <= 1.0 - c.delta)) bad("seeds must satisfy |xi| <= 1 - delta");
  if (!c.flux_radii.empty() && c.flux_radii.size() < 3) bad("flux_radii needs at least three radii");
  build_metric(c.metric);
  return c;
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["experiment"] = c.experiment;
  j["task"] = c.task;
  j["metric"] = c.metric;
  j["lambdas"] = c.lambdas;
  j["delta"] = c.delta;
  j["resolution"] = {{"n_polar", c.resolution.n_polar}, {"n_azimuth", c.resolution.n_azimuth}};
  j["flux_radii"] = c.flux_radii;
  json seeds = json::array();
  for (const auto& s : c.seeds) seeds.push_back(from_vec3(s));
  j["seeds"] = seeds;
  j["scan_spacing"] = c.scan_spacing;
  j["xi"] = from_vec3(c.xi);
  j["draws"] = c.draws;
  j["output_dir"] = c.output_dir;
  return j;
}

}  // namespace wlab::config

#include "wlab/wlab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "core/config.hpp"
#include "core/experiments.hpp"
#include "core/flux.hpp"
#include "core/parallel.hpp"
#include "core/reduced.hpp"
#include "core/solver.hpp"

using wlab::config::json;

struct wlab_model {
  wlab::ConformalMetric metric;
  json entry;
};

namespace {

thread_local std::string t_last_error;

template <class F>
wlab_status guarded(F&& body) {
  try {
    body();
    t_last_error.clear();
    return WLAB_OK;
  } catch (const wlab::Error& e) {
    t_last_error = e.what();
    return static_cast<wlab_status>(static_cast<int>(e.code()));
  } catch (const json::exception& e) {
    t_last_error = std::string("malformed JSON: ") + e.what();
    return WLAB_ERR_CONFIG;
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return WLAB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return WLAB_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) wlab::fail(wlab::ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

wlab::quad::Resolution resolution(const wlab_resolution* r) {
  wlab::quad::Resolution out;
  if (r) {
    out.n_polar = r->n_polar;
    out.n_azimuth = r->n_azimuth;
  }
  wlab::quad::validate(out);
  return out;
}

wlab::Vec3 vec(const double* v) { return wlab::Vec3(v[0], v[1], v[2]); }

void put(const wlab::Vec3& v, double* out) {
  for (int k = 0; k < 3; ++k) out[k] = v[k];
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

json parse(const char* text) { return json::parse(text); }

}  // namespace

extern "C" {

const char* wlab_version(void) { return "1.0.0"; }

const char* wlab_last_error(void) { return t_last_error.c_str(); }

const char* wlab_status_name(wlab_status s) {
  switch (s) {
    case WLAB_OK: return "ok";
    case WLAB_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case WLAB_ERR_DOMAIN: return "domain";
    case WLAB_ERR_SINGULARITY: return "singularity";
    case WLAB_ERR_NON_CONVERGENCE: return "non_convergence";
    case WLAB_ERR_UNBOUNDED_SUPPORT: return "unbounded_support";
    case WLAB_ERR_OUT_OF_PLATEAU: return "out_of_plateau";
    case WLAB_ERR_ILL_CONDITIONED: return "ill_conditioned";
    case WLAB_ERR_BRACKETING: return "bracketing";
    case WLAB_ERR_CONFIG: return "config";
    case WLAB_ERR_IO: return "io";
    case WLAB_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

wlab_status wlab_set_threads(int n) {
  return guarded([&] {
    if (n < 1) wlab::fail(wlab::ErrorCode::invalid_argument, "thread count must be positive");
    wlab::parallel::set_thread_count(n);
  });
}

int wlab_get_threads(void) { return wlab::parallel::thread_count(); }

void wlab_string_free(char* s) { std::free(s); }

wlab_status wlab_model_from_json(const char* metric_json, wlab_model** out) {
  return guarded([&] {
    need(metric_json, "metric_json");
    need(out, "out");
    *out = nullptr;
    json entry = wlab::config::normalize_metric(parse(metric_json));
    auto metric = wlab::config::build_metric(entry);
    *out = new wlab_model{std::move(metric), std::move(entry)};
  });
}

void wlab_model_free(wlab_model* model) { delete model; }

wlab_status wlab_model_describe(const wlab_model* model, char** out_json) {
  return guarded([&] {
    need(model, "model");
    need(out_json, "out_json");
    *out_json = dup(model->entry.dump());
  });
}

wlab_status wlab_scalar_curvature(const wlab_model* model, const double x[3], double* out) {
  return guarded([&] {
    need(model, "model");
    need(x, "x");
    need(out, "out");
    *out = wlab::scalar_curvature(model->metric, vec(x));
  });
}

wlab_status wlab_adm_mass(const wlab_model* model, double lambda, const wlab_resolution* res, double* out) {
  return guarded([&] {
    need(model, "model");
    need(out, "out");
    *out = wlab::flux::adm_mass(model->metric, lambda, resolution(res));
  });
}

wlab_status wlab_hamiltonian_com(const wlab_model* model, double lambda, double mass, const wlab_resolution* res,
                                 double out[3]) {
  return guarded([&] {
    need(model, "model");
    need(out, "out");
    put(wlab::flux::hamiltonian_com(model->metric, lambda, mass, resolution(res)), out);
  });
}

wlab_status wlab_hawking_mass(const wlab_model* model, const double center[3], double radius,
                              const wlab_resolution* res, double* out) {
  return guarded([&] {
    need(model, "model");
    need(center, "center");
    need(out, "out");
    *out = wlab::flux::hawking_mass(model->metric, vec(center), radius, resolution(res));
  });
}

wlab_status wlab_willmore_energy_sphere(const wlab_model* model, const double xi[3], double lambda,
                                        const wlab_resolution* res, double* out) {
  return guarded([&] {
    need(model, "model");
    need(xi, "xi");
    need(out, "out");
    *out = wlab::flux::willmore_energy_sphere(model->metric, vec(xi), lambda, resolution(res));
  });
}

wlab_status wlab_reduced_energy(const wlab_model* model, const double xi[3], double lambda,
                                const wlab_resolution* res, wlab_energy* out) {
  return guarded([&] {
    need(model, "model");
    need(xi, "xi");
    need(out, "out");
    wlab::reduced::Settings s;
    s.resolution = resolution(res);
    const auto e = wlab::reduced::g_total(model->metric, vec(xi), lambda, s);
    out->g1 = e.g1;
    out->g2 = e.g2;
    out->g = e.g;
    put(e.grad_g1, out->grad_g1);
    put(e.grad_g2, out->grad_g2);
    put(e.grad_g, out->grad_g);
  });
}

wlab_status wlab_hawking_from_g(double g, double lambda, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = wlab::reduced::hawking_from_g(g, lambda);
  });
}

wlab_status wlab_find_critical_points(const wlab_model* model, double lambda, double delta,
                                      const wlab_resolution* res, char** out_json) {
  return guarded([&] {
    need(model, "model");
    need(out_json, "out_json");
    wlab::solver::Options opt;
    opt.settings.resolution = resolution(res);
    const auto r = wlab::solver::find_critical_points(model->metric, lambda, delta,
                                                      wlab::solver::default_seeds(delta), opt);
    json pts = json::array();
    for (const auto& p : r.points) pts.push_back(wlab::experiments::to_json(p));
    *out_json = dup(pts.dump());
  });
}

wlab_status wlab_default_config(const char* id, char** out_json) {
  return guarded([&] {
    need(id, "id");
    need(out_json, "out_json");
    *out_json = dup(wlab::config::to_json(wlab::config::default_config(id)).dump(2));
  });
}

wlab_status wlab_normalize_config(const char* config_json, const char* id_override, char** out_json) {
  return guarded([&] {
    need(config_json, "config_json");
    need(out_json, "out_json");
    const auto cfg = wlab::config::parse_config(parse(config_json), id_override ? id_override : "");
    *out_json = dup(wlab::config::to_json(cfg).dump(2));
  });
}

wlab_status wlab_run(const char* config_json, const char* id_override, const char* out_dir, int* all_passed,
                     char** out_json) {
  return guarded([&] {
    need(config_json, "config_json");
    auto cfg = wlab::config::parse_config(parse(config_json), id_override ? id_override : "");
    if (out_dir) cfg.output_dir = out_dir;
    const auto result = wlab::experiments::run_experiment(cfg);
    if (out_dir) wlab::experiments::emit_report(result, out_dir);
    if (all_passed) *all_passed = result.all_passed() ? 1 : 0;
    if (out_json) *out_json = dup(wlab::experiments::to_json(result).dump(2));
  });
}

}  // extern "C"

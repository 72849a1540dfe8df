#ifndef WLAB_WLAB_H
#define WLAB_WLAB_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#  ifdef WLAB_BUILDING_LIBRARY
#    define WLAB_API __declspec(dllexport)
#  else
#    define WLAB_API __declspec(dllimport)
#  endif
#else
#  define WLAB_API __attribute__((visibility("default")))
#endif

/* Status codes. Every function that can fail returns one of these and leaves
 * a human-readable message retrievable through wlab_last_error() on the
 * calling thread. */
typedef enum wlab_status {
  WLAB_OK = 0,
  WLAB_ERR_INVALID_ARGUMENT = 1,
  WLAB_ERR_DOMAIN = 2,
  WLAB_ERR_SINGULARITY = 3,
  WLAB_ERR_NON_CONVERGENCE = 4,
  WLAB_ERR_UNBOUNDED_SUPPORT = 5,
  WLAB_ERR_OUT_OF_PLATEAU = 6,
  WLAB_ERR_ILL_CONDITIONED = 7,
  WLAB_ERR_BRACKETING = 8,
  WLAB_ERR_CONFIG = 9,
  WLAB_ERR_IO = 10,
  WLAB_ERR_INTERNAL = 99
} wlab_status;

/* Opaque conformal metric built from a JSON catalog entry. */
typedef struct wlab_model wlab_model;

/* Surface quadrature resolution. Passing NULL selects the defaults (48, 96). */
typedef struct wlab_resolution {
  int n_polar;
  int n_azimuth;
} wlab_resolution;

typedef struct wlab_energy {
  double g1;
  double g2;
  double g;
  double grad_g1[3];
  double grad_g2[3];
  double grad_g[3];
} wlab_energy;

WLAB_API const char* wlab_version(void);
WLAB_API const char* wlab_last_error(void);
WLAB_API const char* wlab_status_name(wlab_status status);

/* Worker threads used by quadrature and solver loops. Results do not depend on it. */
WLAB_API wlab_status wlab_set_threads(int n);
WLAB_API int wlab_get_threads(void);

/* Strings returned through char** out-parameters are owned by the caller. */
WLAB_API void wlab_string_free(char* s);

/* Model lifecycle. `metric_json` is a catalog entry such as
 * {"type":"schwarzschild","mass":2} or {"type":"shell","k":2,"l":2,"a":[1,4,4,1]}. */
WLAB_API wlab_status wlab_model_from_json(const char* metric_json, wlab_model** out);
WLAB_API void wlab_model_free(wlab_model* model);
WLAB_API wlab_status wlab_model_describe(const wlab_model* model, char** out_json);

WLAB_API wlab_status wlab_scalar_curvature(const wlab_model* model, const double x[3], double* out);
WLAB_API wlab_status wlab_adm_mass(const wlab_model* model, double lambda, const wlab_resolution* res, double* out);
WLAB_API wlab_status wlab_hamiltonian_com(const wlab_model* model, double lambda, double mass,
                                          const wlab_resolution* res, double out[3]);
WLAB_API wlab_status wlab_hawking_mass(const wlab_model* model, const double center[3], double radius,
                                       const wlab_resolution* res, double* out);
WLAB_API wlab_status wlab_willmore_energy_sphere(const wlab_model* model, const double xi[3], double lambda,
                                                 const wlab_resolution* res, double* out);
WLAB_API wlab_status wlab_reduced_energy(const wlab_model* model, const double xi[3], double lambda,
                                         const wlab_resolution* res, wlab_energy* out);
WLAB_API wlab_status wlab_hawking_from_g(double g, double lambda, double* out);

/* Critical points of the reduced energy from the default seeds; the result is a
 * JSON array of critical-point records. */
WLAB_API wlab_status wlab_find_critical_points(const wlab_model* model, double lambda, double delta,
                                               const wlab_resolution* res, char** out_json);

/* Configuration documents. `id` is E1..E6 or "custom". */
WLAB_API wlab_status wlab_default_config(const char* id, char** out_json);
WLAB_API wlab_status wlab_normalize_config(const char* config_json, const char* id_override, char** out_json);

/* Runs an experiment or custom task described by `config_json`. `id_override`
 * may be NULL. When `out_dir` is non-NULL the report files are written there.
 * `all_passed` receives 1 when every assertion passed and no task failed.
 * `out_json` (optional) receives the full result document. */
WLAB_API wlab_status wlab_run(const char* config_json, const char* id_override, const char* out_dir,
                              int* all_passed, char** out_json);

#ifdef __cplusplus
}
#endif

#endif

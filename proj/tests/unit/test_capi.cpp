#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "wlab/wlab.h"

TEST_CASE("c api model lifecycle") {
  CHECK(std::string(wlab_version()).size() > 0);
  wlab_model* m = nullptr;
  REQUIRE(wlab_model_from_json(R"({"type":"schwarzschild"})", &m) == WLAB_OK);
  REQUIRE(m != nullptr);
  char* desc = nullptr;
  REQUIRE(wlab_model_describe(m, &desc) == WLAB_OK);
  CHECK(std::string(desc).find("\"mass\":2.0") != std::string::npos);
  wlab_string_free(desc);

  double mass = 0.0;
  CHECK(wlab_adm_mass(m, 1e3, nullptr, &mass) == WLAB_OK);
  CHECK(mass == doctest::Approx(2.0 * std::pow(1.001, 3)).epsilon(1e-13));
  const double zero[3] = {0, 0, 0};
  double hm = 0.0;
  CHECK(wlab_hawking_mass(m, zero, 10.0, nullptr, &hm) == WLAB_OK);
  CHECK(hm == doctest::Approx(2.0).epsilon(1e-13));
  wlab_energy e{};
  const double xi[3] = {0.5, 0, 0};
  CHECK(wlab_reduced_energy(m, xi, 100.0, nullptr, &e) == WLAB_OK);
  CHECK(e.g == doctest::Approx(119.45338137063602802).epsilon(1e-14));
  CHECK(e.g2 == 0.0);
  double mh = 0.0;
  CHECK(wlab_hawking_from_g(0.0, 10.0, &mh) == WLAB_OK);
  CHECK(mh == 2.0);
  char* pts = nullptr;
  CHECK(wlab_find_critical_points(m, 100.0, 0.25, nullptr, &pts) == WLAB_OK);
  CHECK(std::string(pts).find("\"classification\":\"min\"") != std::string::npos);
  wlab_string_free(pts);
  wlab_model_free(m);
}

TEST_CASE("c api error reporting") {
  wlab_model* m = nullptr;
  CHECK(wlab_model_from_json(R"({"type":"kerr"})", &m) == WLAB_ERR_CONFIG);
  CHECK(m == nullptr);
  CHECK(std::string(wlab_last_error()).find("kerr") != std::string::npos);
  CHECK(wlab_model_from_json("{not json", &m) == WLAB_ERR_CONFIG);
  CHECK(wlab_model_from_json(nullptr, &m) == WLAB_ERR_INVALID_ARGUMENT);

  REQUIRE(wlab_model_from_json(R"({"type":"schwarzschild"})", &m) == WLAB_OK);
  const double inside[3] = {0.5, 0, 0};
  double r = 0.0;
  CHECK(wlab_scalar_curvature(m, inside, &r) == WLAB_ERR_SINGULARITY);
  wlab_resolution bad{0, 4};
  CHECK(wlab_adm_mass(m, 10.0, &bad, &r) == WLAB_ERR_INVALID_ARGUMENT);
  const double outside[3] = {2, 0, 0};
  CHECK(wlab_scalar_curvature(m, outside, &r) == WLAB_OK);
  CHECK(std::string(wlab_last_error()).empty());
  CHECK(std::string(wlab_status_name(WLAB_ERR_DOMAIN)) == "domain");
  CHECK(wlab_set_threads(0) == WLAB_ERR_INVALID_ARGUMENT);
  wlab_model_free(m);
}

TEST_CASE("c api runs configurations") {
  char* cfg = nullptr;
  REQUIRE(wlab_default_config("E1", &cfg) == WLAB_OK);
  int passed = 0;
  char* out = nullptr;
  CHECK(wlab_run(cfg, nullptr, nullptr, &passed, &out) == WLAB_OK);
  CHECK(passed == 1);
  CHECK(std::string(out).find("\"all_passed\": true") != std::string::npos);
  wlab_string_free(out);
  char* norm = nullptr;
  CHECK(wlab_normalize_config(cfg, nullptr, &norm) == WLAB_OK);
  CHECK(std::string(norm) == std::string(cfg));
  wlab_string_free(norm);
  wlab_string_free(cfg);
  CHECK(wlab_run(R"({"experiment":"E1","lambdas":[1]})", nullptr, nullptr, &passed, nullptr) == WLAB_ERR_CONFIG);
  CHECK(wlab_set_threads(2) == WLAB_OK);
  CHECK(wlab_get_threads() == 2);
  CHECK(wlab_set_threads(1) == WLAB_OK);
}

#include <doctest.h>

#include <cmath>
#include <memory>

#include "core/catalog.hpp"
#include "core/flux.hpp"

using namespace wlab;
using namespace wlab::flux;

TEST_CASE("schwarzschild flux integrals") {
  const auto s = ConformalMetric::schwarzschild();
  // The flux of u^4 delta through |x| = lambda is 2 u^3 = 2 (1 + 1/lambda)^3 exactly.
  for (double lam : {10.0, 1e3, 1e5})
    CHECK(adm_mass(s, lam) == doctest::Approx(2.0 * std::pow(1.0 + 1.0 / lam, 3)).epsilon(1e-13));
  CHECK(hamiltonian_com(s, 1e3, 2.0).norm() < 1e-10);
  CHECK(adm_mass(ConformalMetric::flat(), 50.0) == 0.0);

  const Vec3 c(1.0, 2.0, 3.0);
  const auto shifted = ConformalMetric::schwarzschild(2.0, c);
  // The finite-radius center carries an O(1/lambda) bias that halves with lambda.
  const double e1 = (hamiltonian_com(shifted, 1e3, 2.0) - c).norm();
  const double e2 = (hamiltonian_com(shifted, 2e3, 2.0) - c).norm();
  CHECK(e1 < 2e-2);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.01));
  CHECK((hamiltonian_com(shifted, 1e4, 2.0) - c).norm() < 2e-3);
  const auto report = flux_report(shifted, {1e3, 2e3, 4e3});
  CHECK(report.mass.limit == doctest::Approx(2.0).epsilon(1e-8));
  CHECK((report.center_limit() - c).norm() < 1e-6);
}

TEST_CASE("flux radius must clear the singular core") {
  const auto s = ConformalMetric::schwarzschild(2.0, Vec3(5, 0, 0));
  CHECK_THROWS_AS(adm_mass(s, 5.5), Error);
  CHECK_THROWS_AS(adm_mass(s, -1.0), Error);
}

TEST_CASE("hawking mass") {
  const auto s = ConformalMetric::schwarzschild();
  CHECK(hawking_mass(s, Vec3::Zero(), 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(hawking_mass(s, Vec3::Zero(), 100.0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(std::abs(hawking_mass(ConformalMetric::flat(), Vec3(3, 1, -2), 5.0)) < 1e-13);
  // Off-centre sphere, multiprecision axisymmetric reference.
  CHECK(hawking_mass(s, Vec3(0, 0, 1), 3.0) == doctest::Approx(1.9085384244283853389).epsilon(1e-11));
}

TEST_CASE("willmore energy of coordinate spheres") {
  const auto s = ConformalMetric::schwarzschild();
  for (double lam : {3.0, 100.0, 1e4}) {
    const double q = (lam - 1) / (lam + 1);
    CHECK(willmore_energy_sphere(s, Vec3::Zero(), lam) == doctest::Approx(16 * kPi * q * q).epsilon(1e-13));
  }
  CHECK(willmore_energy_sphere(ConformalMetric::flat(), Vec3(0.4, 0, 0), 10.0) == doctest::Approx(16 * kPi).epsilon(1e-13));
  CHECK(willmore_energy_sphere(s, Vec3(0, 0, 0.3), 100.0) == doctest::Approx(48.298390152367692303).epsilon(1e-11));
}

TEST_CASE("oscillator mass and center") {
  const ConformalMetric m(2.0, Vec3::Zero(), std::make_shared<OscillatorPerturbation>(0, 8));
  CHECK(adm_mass(m, 1e3) == doctest::Approx(2.0).epsilon(5e-3));
  const auto r = flux_report(m, {1e3, 2e3, 4e3});
  CHECK(r.mass.limit == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(r.center_limit().norm() < 5e-2);
}

TEST_CASE("richardson extrapolation") {
  auto f1 = [](double l) { return 5.0 + 3.0 / l; };
  auto f2 = [](double l) { return 5.0 + 3.0 / l + 7.0 / (l * l); };
  std::vector<std::pair<double, double>> a, b;
  for (double l : {100.0, 200.0, 400.0}) {
    a.emplace_back(l, f1(l));
    b.emplace_back(l, f2(l));
  }
  const auto ea = extrapolate_limit(a);
  CHECK(std::abs(ea.limit - 5.0) < 1e-10);
  CHECK(ea.converged);
  CHECK(std::abs(extrapolate_limit(b).limit - 5.0) < 1e-6);

  const std::vector<std::pair<double, double>> osc{{400, 1.0 / 24}, {700, 0.0}, {4000, 1.0 / 24}, {7000, 0.0}};
  const auto eo = extrapolate_limit(osc);
  CHECK_FALSE(eo.converged);
  CHECK(eo.error > 1e-3);
  CHECK_THROWS_AS(extrapolate_limit({{1.0, 2.0}}), Error);
}

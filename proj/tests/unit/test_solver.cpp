#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "core/catalog.hpp"
#include "core/solver.hpp"

using namespace wlab;
using namespace wlab::solver;

namespace {
ConformalMetric oscillator() { return ConformalMetric(2.0, Vec3::Zero(), std::make_shared<OscillatorPerturbation>(0, 8)); }
}  // namespace

TEST_CASE("schwarzschild critical point is the origin") {
  const auto s = ConformalMetric::schwarzschild();
  const auto r = find_critical_points(s, 100.0, 0.25, default_seeds(0.25));
  REQUIRE(r.points.size() == 1);
  const auto& p = r.points.front();
  CHECK(p.xi.norm() < 1e-9);
  CHECK(p.classification == Classification::minimum);
  for (int k = 0; k < 3; ++k) CHECK(p.hessian_eigenvalues[k] == doctest::Approx(256 * kPi).epsilon(1e-3));
  CHECK(p.hessian_asymmetry < 1e-6);
  CHECK(std::string(to_string(p.classification)) == "min");
}

TEST_CASE("default seeds respect the delta ball") {
  const auto seeds = default_seeds(0.25);
  CHECK(seeds.size() == 7);
  for (const auto& s : seeds) CHECK(s.norm() <= 0.75);
}

TEST_CASE("oscillator barycenter at the two sampling radii") {
  const auto m = oscillator();
  const auto at400 = find_critical_points(m, 400.0, 0.25, default_seeds(0.25));
  REQUIRE_FALSE(at400.points.empty());
  CHECK(std::abs(at400.points.front().barycenter[2] * 24.0 - 1.0) < 0.15);
  CHECK(at400.points.front().hessian_asymmetry < 1e-6);
  const auto at700 = find_critical_points(m, 700.0, 0.25, default_seeds(0.25));
  REQUIRE_FALSE(at700.points.empty());
  CHECK(at700.points.front().barycenter.norm() < 0.02);
}

TEST_CASE("branch trace is independent of seed order") {
  const auto m = oscillator();
  const std::vector<double> lams{400.0, 700.0};
  auto seeds = default_seeds(0.25);
  const auto a = trace_branch(m, lams, 0.25, seeds);
  std::reverse(seeds.begin(), seeds.end());
  const auto b = trace_branch(m, lams, 0.25, seeds);
  for (std::size_t i = 0; i < lams.size(); ++i) {
    REQUIRE(a.entries[i].point);
    REQUIRE(b.entries[i].point);
    CHECK((a.entries[i].point->xi - b.entries[i].point->xi).norm() <= 1e-8);
  }
  CHECK(a.oscillation[2] > 0.03);
}

TEST_CASE("symmetric shell keeps the barycenter on the axis") {
  const ConformalMetric m(2.0, Vec3::Zero(),
                          std::make_shared<ShellSumPerturbation>(std::vector<ShellParams>{{2, 2, {1, 4, 4, 0}}}));
  const auto t = trace_branch(m, {4e4}, 0.25, default_seeds(0.25));
  REQUIRE(t.entries.front().point);
  CHECK(std::hypot(t.entries.front().point->barycenter[0], t.entries.front().point->barycenter[1]) < 1e-9);
}

TEST_CASE("schwarzschild comparison and scan are trivial") {
  const auto s = ConformalMetric::schwarzschild();
  const auto c = com_compare(s, 1e3, 0.25, {1e3, 2e3, 4e3}, default_seeds(0.25));
  CHECK(c.barycenter.norm() < 1e-9);
  CHECK(c.c_flux.norm() < 1e-6);
  CHECK(c.curvature_term.norm() == 0.0);
  const auto scan = stationary_scan(s, 100.0, 0.25, 0.25);
  CHECK(scan.min_grad_norm < 1e-12);
  CHECK(scan.argmin.norm() < 1e-12);
}

TEST_CASE("convexity inequality") {
  const ScalarField quartic{[](const Vec3& x) { return std::pow(x.norm(), -4); }, {}};
  CHECK(convexity_check(quartic, Vec3::Zero(), Vec3(0.5, 0, 0), 1.0).margin >= 0.0);
  const auto same = convexity_check(quartic, Vec3(0.1, 0.2, 0), Vec3(0.1, 0.2, 0), 1.0);
  CHECK(same.margin == 0.0);

  const ScalarField square{[](const Vec3& x) { return std::pow(x.norm(), -2); }, {}};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int i = 0; i < 50; ++i) {
    const Vec3 a(u(rng), u(rng), u(rng)), b(u(rng), u(rng), u(rng));
    const auto r = convexity_check(square, a, b, 1.0);
    CHECK(r.margin >= -1e-9);
    CHECK(r.hypothesis_ok);
  }

  const ScalarField growing{[](const Vec3& x) { return x.squaredNorm(); }, {}};
  CHECK_FALSE(convexity_check(growing, Vec3::Zero(), Vec3(0.3, 0, 0), 1.0).hypothesis_ok);
}

TEST_CASE("ray map") {
  const double zeta = kPi / 2;
  const auto m = ray_map(zeta, Vec3::Zero(), Vec3(0, 0, 0.5));
  CHECK(std::abs(m.t - std::sin(zeta) / std::sin(m.theta)) <= 1e-10);
  CHECK(std::abs(m.t - (std::cos(zeta) + m.b) / (std::cos(m.theta) + m.a)) <= 1e-10);
  CHECK(m.theta <= zeta);
  CHECK(m.t > 1.0);
  CHECK_THROWS_AS(ray_map(zeta, Vec3(0.1, 0, 0), Vec3(0.1, 0, 0)), Error);
  CHECK_THROWS_AS(ray_map(0.0, Vec3::Zero(), Vec3(0.1, 0, 0)), Error);

  const Vec3 x1(0, 0.1, 0.2), x2(0, 0.2, 0.4);
  const double z = 1.1, h = 1e-6;
  const double fd = (ray_map(z + h, x1, x2).theta - ray_map(z - h, x1, x2).theta) / (2 * h);
  CHECK(ray_map_rate(z, ray_map(z, x1, x2)) == doctest::Approx(fd).epsilon(1e-6));
}

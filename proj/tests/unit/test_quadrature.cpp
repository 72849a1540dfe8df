#include <doctest.h>

#include <cmath>
#include <memory>

#include "core/catalog.hpp"
#include "core/metric.hpp"
#include "core/quadrature.hpp"

using namespace wlab;
using namespace wlab::quad;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const auto& g = gauss_legendre(10);
  double sum = 0.0, p18 = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    sum += g.w[i];
    p18 += g.w[i] * std::pow(g.x[i], 18);
  }
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(p18 == doctest::Approx(2.0 / 19.0).epsilon(1e-14));
  CHECK(&gauss_legendre(10) == &g);
  CHECK_THROWS_AS(gauss_legendre(0), Error);
}

TEST_CASE("sphere rules") {
  const Vec3 c(1.0, -2.0, 0.5);
  const double r = 3.0;
  const auto rule = SphereRule::product(c, r);
  CHECK(integrate_sphere([](const Vec3&, const Vec3&) { return 1.0; }, rule) == doctest::Approx(4 * kPi * r * r).epsilon(1e-14));
  const Vec3 n = integrate_sphere_vec([](const Vec3&, const Vec3& nu) -> Vec3 { return nu; }, rule);
  CHECK(n.norm() < 1e-12);

  // x3 nu over S_lambda(lambda xi) has only the e3 component (4 pi / 3) lambda^3.
  const double lam = 50.0;
  Resolution fine{64, 128};
  const auto s = SphereRule::product(lam * Vec3(0.2, 0.1, -0.4), lam, fine);
  const Vec3 m = integrate_sphere_vec([](const Vec3& x, const Vec3& nu) -> Vec3 { return x[2] * nu; }, s);
  CHECK(m[2] == doctest::Approx(4 * kPi / 3 * lam * lam * lam).epsilon(1e-13));
  CHECK(std::abs(m[0]) + std::abs(m[1]) < 1e-8);
}

TEST_CASE("origin adapted rule resolves near-origin spheres") {
  // e3 component of the integral of |x|^-p nu over S_1(0.5 e3), multiprecision references.
  const double ref[3] = {-4.6905908617568403533, -8.3775804095727819692, -14.119698851016462585};
  const auto rule = SphereRule::origin_adapted(Vec3(0, 0, -0.5), 1.0, {});
  for (int p = 2; p <= 4; ++p) {
    const Vec3 v = integrate_sphere_vec(
        [&](const Vec3& x, const Vec3& nu) -> Vec3 { return std::pow(x.norm(), -p) * nu; }, rule);
    // The reference sphere is centred at +0.5 e3; mirrored centre flips the sign.
    CHECK(-v[2] == doctest::Approx(ref[p - 2]).epsilon(1e-11));
  }
  const auto far = SphereRule::origin_adapted(Vec3(0.99, 0, 0), 1.0, {});
  const double area = integrate_sphere([](const Vec3&, const Vec3&) { return 1.0; }, far);
  CHECK(area == doctest::Approx(4 * kPi).epsilon(1e-13));
}

TEST_CASE("hemispheres partition the sphere") {
  const auto rule = SphereRule::product(Vec3::Zero(), 1.0);
  const Vec3 axis = Vec3(1, 1, 0).normalized();
  CHECK(integrate_hemisphere([](const Vec3&, const Vec3&) { return 1.0; }, rule, axis, +1) ==
        doctest::Approx(2 * kPi).epsilon(1e-13));
  CHECK(integrate_hemisphere([&](const Vec3&, const Vec3& nu) { return nu.dot(axis); }, rule, axis, +1) ==
        doctest::Approx(kPi).epsilon(1e-13));
  const auto f = [](const Vec3& x, const Vec3&) { return std::exp(x[0]) + x[1] * x[2]; };
  const double whole = integrate_sphere(f, rule);
  const double halves = integrate_hemisphere(f, rule, axis, +1) + integrate_hemisphere(f, rule, axis, -1);
  CHECK(halves == doctest::Approx(whole).epsilon(1e-12));
}

TEST_CASE("exterior integrals") {
  ExteriorRule r;
  r.radius = 7.0;
  r.decay = DecayBound{1.0, 1e8};
  const auto res = integrate_exterior([](const Vec3& x) { return std::pow(x.norm(), -4); }, r);
  CHECK(res.value + res.tail_estimate == doctest::Approx(4 * kPi / 7.0).epsilon(1e-10));

  r.support = std::vector<Interval>{{1.0, 100.0}};
  r.decay.reset();
  CHECK(integrate_exterior([](const Vec3&) { return 0.0; }, r).value == 0.0);

  // Off-centre ball: exterior of B_2(0.5 e1). Between |x| = R - c and R + c only the
  // polar cap s < (r^2 + c^2 - R^2) / (2 r c) of each origin sphere is outside.
  ExteriorRule off;
  off.center = Vec3(0.5, 0, 0);
  off.radius = 2.0;
  off.decay = DecayBound{1.0, 1e8};
  const auto o = integrate_exterior([](const Vec3& x) { return std::pow(x.norm(), -4); }, off);
  const double c = 0.5, R = 2.0;
  const double a = R - c, b = R + c;
  const double lens = 2 * kPi * ((1.0 / a - 1.0 / b) + ((1.0 / (2 * c)) * std::log(b / a)) +
                                 ((c * c - R * R) / (2 * c)) * 0.5 * (1.0 / (a * a) - 1.0 / (b * b)));
  CHECK(o.value + o.tail_estimate == doctest::Approx(lens + 4 * kPi / b).epsilon(1e-10));
}

TEST_CASE("support-aware exterior integral of a shell curvature") {
  const ShellParams p{2, 1, {1, 4, 4, 0}};
  const ConformalMetric m(2.0, Vec3::Zero(), std::make_shared<ShellSumPerturbation>(std::vector<ShellParams>{p}));
  std::vector<Interval> support;
  REQUIRE(m.curvature_support(support));
  ExteriorRule r;
  r.radius = 3.0;  // below the shell
  r.breakpoints = m.breakpoints();
  r.support = support;
  const double whole = integrate_exterior([&](const Vec3& x) { return scalar_curvature(m, x); }, r).value;
  ExteriorRule annulus = r;
  annulus.radius = support.front().lo;
  const double shell_only = integrate_exterior([&](const Vec3& x) { return scalar_curvature(m, x); }, annulus).value;
  CHECK(whole == doctest::Approx(shell_only).epsilon(1e-12));
}

TEST_CASE("resolution validation") {
  CHECK_THROWS_AS(validate(Resolution{0, 10}), Error);
  CHECK_THROWS_AS(validate(Resolution{10, 0}), Error);
  CHECK_NOTHROW(validate(Resolution{}));
}

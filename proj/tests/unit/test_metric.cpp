#include <doctest.h>

#include <cmath>
#include <memory>

#include "core/bump.hpp"
#include "core/catalog.hpp"
#include "core/metric.hpp"

using namespace wlab;

namespace {
ConformalMetric oscillator_model(int k_max = 2) {
  return ConformalMetric(2.0, Vec3::Zero(), std::make_shared<OscillatorPerturbation>(0, k_max));
}
ConformalMetric shell_model(const ShellParams& p) {
  return ConformalMetric(2.0, Vec3::Zero(), std::make_shared<ShellSumPerturbation>(std::vector<ShellParams>{p}));
}
}  // namespace

TEST_CASE("bump profiles") {
  const auto chi = BumpProfile::shell_base();
  CHECK(chi.jet(2.0).value == 1.0);
  CHECK(chi.jet(0.4).value == 0.0);
  CHECK(chi.jet(0.6).value == doctest::Approx(0.30294071603459272072).epsilon(1e-13));
  const auto osc = BumpProfile::oscillator();
  CHECK(osc.jet(4.0).value == 1.0);
  CHECK(osc.jet(6.5).value == 0.0);
  // First derivative against central differences inside the ramp.
  const double h = 1e-6;
  CHECK(osc.jet(2.4).d1 == doctest::Approx((osc.jet(2.4 + h).value - osc.jet(2.4 - h).value) / (2 * h)).epsilon(1e-7));
  CHECK(osc.jet(5.3).d2 ==
        doctest::Approx((osc.jet(5.3 + 1e-4).value - 2 * osc.jet(5.3).value + osc.jet(5.3 - 1e-4).value) / 1e-8).epsilon(1e-5));
}

TEST_CASE("schwarzschild curvature and deviation") {
  const auto s = ConformalMetric::schwarzschild();
  CHECK(scalar_curvature(s, Vec3(3, -1, 2)) == 0.0);
  const auto d = metric_deviation(s, Vec3(5, 0, 0));
  CHECK(d.sigma == 0.0);
  CHECK(d.h == doctest::Approx(std::pow(1.2, 4) - 1.0).epsilon(1e-14));
  CHECK_THROWS_AS(scalar_curvature(s, Vec3(0.5, 0, 0)), Error);
}

TEST_CASE("oscillator curvature against a multiprecision laplacian") {
  const auto m = oscillator_model();
  CHECK(scalar_curvature(m, Vec3(1.5, 0.7, 1.9)) == doctest::Approx(-0.028255739786065671767).epsilon(1e-11));
}

TEST_CASE("oscillator plateau curvature is 4 x3 |x|^-6 up to the u^-5 factor") {
  const auto m = oscillator_model(3);
  const Vec3 x = 400.0 * Vec3(0.3, -0.4, std::sqrt(0.75)).normalized();
  const double r = x.norm();
  const double leading = 4.0 * x[2] / std::pow(r, 6);
  const double R = scalar_curvature(m, x);
  const double u = 1.0 + m.excess(x).value;
  CHECK(R == doctest::Approx(leading / std::pow(u, 5)).epsilon(1e-10));
  // At |x| = 400 the u^-5 factor alone moves R by 1.24%; one decade out it is 0.125%.
  const Vec3 far = 10.0 * x;
  CHECK(std::abs(scalar_curvature(m, far) * std::pow(far.norm(), 6) / (4.0 * far[2]) - 1.0) < 0.01);
}

TEST_CASE("oscillator deviation decays like |x|^-3") {
  const auto m = oscillator_model(3);
  for (double r : {1e3, 4e3}) {
    double worst = 0.0;
    for (int i = 0; i < 32; ++i) {
      const double th = 0.1 + 2.9 * i / 31.0;
      const Vec3 x = r * Vec3(std::sin(th), 0.0, std::cos(th));
      worst = std::max(worst, std::abs(metric_deviation(m, x).sigma) * r * r * r);
    }
    CHECK(std::isfinite(worst));
    CHECK(worst < 1.0);
    if (r == 4e3) CHECK(worst > 0.1);
  }
}

TEST_CASE("shell laplacian closed forms") {
  ShellParams p{2, 2, {1, 0, 0, 0}};
  const double lam = p.lambda();
  const Vec3 x = lam * Vec3(0.2, 0.5, -0.3);
  CHECK(shell_laplacian_closed_form(p, x) == doctest::Approx(2 / std::pow(x.norm(), 4)).epsilon(1e-14));
  p.a = {0, 0, 0, 1};
  CHECK(shell_laplacian_closed_form(p, x) == doctest::Approx(6 * std::pow(lam, -5) * x[2]).epsilon(1e-14));
  p.a = {0, 1, 0, 0};
  CHECK(shell_laplacian_closed_form(p, x) == doctest::Approx(1 / (lam * std::pow(x.norm(), 3))).epsilon(1e-14));
  CHECK_THROWS_AS(shell_laplacian_closed_form(p, 3.0 * lam * Vec3::UnitX()), Error);

  p.a = {1, 4, 4, 1};
  const Vec3 y = lam * Vec3(0.6, -0.3, 0.5);
  const auto fd = finite_difference_jet([&](const Vec3& z) { return shell_eta(p, z).value; }, y);
  CHECK(fd.laplacian == doctest::Approx(shell_laplacian_closed_form(p, y)).epsilon(1e-5));
  CHECK(shell_eta(p, y).laplacian == doctest::Approx(shell_laplacian_closed_form(p, y)).epsilon(1e-12));
}

TEST_CASE("shell scalar curvature on the plateau") {
  const ShellParams p{2, 2, {1, 4, 4, 1}};
  const auto m = shell_model(p);
  const Vec3 x = p.lambda() * Vec3(0.3, 0.1, -0.7);
  const double u = 1.0 + m.excess(x).value;
  CHECK(scalar_curvature(m, x) == doctest::Approx(-4.0 / std::pow(u, 5) * shell_laplacian_closed_form(p, x)).epsilon(1e-12));
}

TEST_CASE("shell curvature in the ramp against a multiprecision radial derivative") {
  const auto m = shell_model({2, 1, {1, 4, 4, 0}});
  CHECK(scalar_curvature(m, Vec3(0, 50, 0)) == doctest::Approx(-7.6709741728814453109e-6).epsilon(1e-9));
}

TEST_CASE("shell families and disjointness") {
  const auto fam = shell_family(2, 1, 3, {1, 4, 4, 0}, false);
  CHECK(fam.size() == 3);
  CHECK(shells_disjoint(fam));
  std::vector<ShellParams> overlapping{{2, 1, {1, 0, 0, 0}}, {3, 1, {1, 0, 0, 0}}};
  CHECK_FALSE(shells_disjoint(overlapping));
  CHECK_THROWS_AS(ShellSumPerturbation{overlapping}, Error);
  CHECK_THROWS_AS(ShellSumPerturbation(std::vector<ShellParams>{ShellParams{2, 5, {1, 0, 0, 0}}}), Error);
}

TEST_CASE("mean curvature of coordinate spheres") {
  const auto s = ConformalMetric::schwarzschild();
  CHECK(std::abs(mean_curvature_sphere(s, Vec3::Zero(), 1.0, Vec3::UnitX())) < 1e-14);
  CHECK(mean_curvature_sphere(s, Vec3::Zero(), 100.0, Vec3::UnitY()) ==
        doctest::Approx(0.019217684928967360024).epsilon(1e-13));
  CHECK(mean_curvature_sphere(ConformalMetric::flat(), Vec3(1, 2, 3), 7.0, Vec3::UnitZ()) ==
        doctest::Approx(2.0 / 7.0).epsilon(1e-15));
}

TEST_CASE("leading schwarzschild ricci") {
  const Mat3 r = ricci_schwarzschild_leading(Vec3(5, 0, 0));
  CHECK(r(0, 0) == doctest::Approx(-4.0 / 125).epsilon(1e-14));
  CHECK(r(1, 1) == doctest::Approx(2.0 / 125).epsilon(1e-14));
  CHECK(r(2, 2) == doctest::Approx(2.0 / 125).epsilon(1e-14));
  CHECK(std::abs(ricci_schwarzschild_leading(Vec3(1, -2, 3)).trace()) < 1e-15);
}

TEST_CASE("glued metric reproduces the leaf inside its plateau and vanishes in gaps") {
  const ShellParams p{3, 2, {2, 3, 5, 0}};
  auto leaf = std::make_shared<ShellSumPerturbation>(std::vector<ShellParams>{p});
  const double lam = p.lambda();
  GluedPerturbation g({{leaf, 0.1 * lam, 2.0 * lam}});
  const Vec3 x = lam * Vec3(0.2, 0.3, 0.9);
  CHECK(g.evaluate(x).value == leaf->evaluate(x).value);
  CHECK(g.evaluate(Vec3(0, 0, 100 * lam)).value == 0.0);
  // The ramp field agrees with central differences.
  const Vec3 y = lam * Vec3(0, 0, 0.06);
  const auto jet = g.evaluate(y);
  const auto fd = finite_difference_jet([&](const Vec3& z) { return g.evaluate(z).value; }, y);
  CHECK(jet.gradient[2] == doctest::Approx(fd.gradient[2]).epsilon(1e-6));
  CHECK(jet.laplacian == doctest::Approx(fd.laplacian).epsilon(1e-4));
}

#include <doctest.h>

#include <cmath>
#include <memory>

#include "core/catalog.hpp"
#include "core/reduced.hpp"

using namespace wlab;
using namespace wlab::reduced;

namespace {
ConformalMetric shells(std::vector<ShellParams> p) {
  return ConformalMetric(2.0, Vec3::Zero(), std::make_shared<ShellSumPerturbation>(std::move(p)));
}
}  // namespace

TEST_CASE("G1 golden values") {
  CHECK(g1(Vec3::Zero()) == 0.0);
  CHECK(g1(Vec3(0.5, 0, 0)) == doctest::Approx(119.45338137063602802).epsilon(1e-14));
  CHECK(g1(Vec3(0, 0.1, 0)) == doctest::Approx(4.0455592067423700757).epsilon(1e-13));
  CHECK(g1(Vec3(0, 0, 1e-4)) == doctest::Approx(4.0212386207223671164e-6).epsilon(1e-13));
  CHECK(g1(Vec3(0.9, 0, 0)) == doctest::Approx(904.64642805012093743).epsilon(1e-13));
  CHECK(g1(Vec3(0, 0.99, 0)) == doctest::Approx(6021.7283591864925945).epsilon(1e-13));
  CHECK_THROWS_AS(g1(Vec3(1.0, 0, 0)), Error);
}

TEST_CASE("G1 gradient") {
  CHECK(grad_g1(Vec3(0.5, 0, 0))[0] == doctest::Approx(573.30646298074523666).epsilon(1e-13));
  CHECK(grad_g1(Vec3(0, 0, 0.9))[2] == doctest::Approx(7606.6792617710458265).epsilon(1e-13));
  const Vec3 small(0, 1e-4, 0);
  CHECK(grad_g1(small)[1] == doctest::Approx(0.080424772896995981577).epsilon(1e-13));
  CHECK((grad_g1(small) - 256 * kPi * small).norm() / (256 * kPi * 1e-4) < 1e-6);
  CHECK(grad_g1(Vec3::Zero()).norm() == 0.0);
}

TEST_CASE("G1 boundary form") {
  const Vec3 f = g1_boundary_form(Vec3(0.9, 0, 0));
  const double e = 0.1;
  CHECK(f[0] == doctest::Approx(2 * kPi * (8 / (e * e) + 40 / e - 24 * std::log(e))).epsilon(1e-14));
  CHECK(g1_boundary_form(Vec3(0, 0.9, 0)).norm() == doctest::Approx(f.norm()).epsilon(1e-15));
  // The remainder saturates at about 106.729 pi as |xi| -> 1.
  auto rem = [](double t) { return (grad_g1(Vec3(t, 0, 0)) - g1_boundary_form(Vec3(t, 0, 0))).norm(); };
  for (double t : {0.9, 0.95, 0.99, 0.995, 0.999}) CHECK(rem(t) < 106.73 * kPi);
  CHECK(rem(0.99) == doctest::Approx(323.652266002).epsilon(1e-8));
  CHECK(rem(0.995) - rem(0.99) < rem(0.99) - rem(0.95));
}

TEST_CASE("G2 vanishes for schwarzschild") {
  const auto s = ConformalMetric::schwarzschild();
  CHECK(g2(s, Vec3(0.2, 0, 0), 100.0) == 0.0);
  CHECK(grad_g2(s, Vec3(0.2, 0, 0), 100.0).norm() == 0.0);
  const auto e = g_total(s, Vec3(0, 0.3, 0), 50.0);
  CHECK(e.g == g1(Vec3(0, 0.3, 0)));
  CHECK(e.grad_g == grad_g1(Vec3(0, 0.3, 0)));
}

TEST_CASE("G2 of a shell against a multiprecision radial integral") {
  const auto m = shells({{2, 1, {1, 4, 4, 0}}});
  CHECK(g2(m, Vec3::Zero(), 40.0) == doctest::Approx(-226.61927180644010377).epsilon(1e-9));
  CHECK(g2(m, Vec3(0, 0, 0.3), 40.0) == doctest::Approx(-263.80173898598792973).epsilon(1e-9));
  CHECK(grad_g2(m, Vec3(0, 0, 0.3), 40.0)[2] == doctest::Approx(-259.15678390312888192).epsilon(1e-8));
}

TEST_CASE("G2 gradient matches central differences") {
  const auto m = shells({{2, 2, {1, 4, 4, 1}}});
  const double lam = 4e4, h = 1e-4;
  const Vec3 xi(0.2, -0.1, 0.3);
  const Vec3 g = grad_g2(m, xi, lam);
  Vec3 fd;
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e[k] = h;
    fd[k] = (g2(m, xi + e, lam) - g2(m, xi - e, lam)) / (2 * h);
  }
  CHECK((fd - g).norm() / g.norm() < 1e-4);
}

TEST_CASE("G2 is additive over disjoint shells") {
  const ShellParams a{2, 1, {1, 4, 4, 0}}, b{2, 2, {2, 3, 5, 1}};
  const Vec3 xi(0.1, 0.2, -0.1);
  for (double lam : {40.0, 4e4}) {
    const double sum = g2(shells({a}), xi, lam) + g2(shells({b}), xi, lam);
    CHECK(g2(shells({a, b}), xi, lam) == doctest::Approx(sum).epsilon(1e-12));
  }
}

TEST_CASE("G2 requires a bounded support") {
  const ConformalMetric m(2.0, Vec3::Zero(), std::make_shared<OscillatorPerturbation>(0, 4));
  CHECK_THROWS_AS(g2(ConformalMetric(2.0, Vec3::Zero(),
                                     std::make_shared<SampledPerturbation>([](const Vec3&) { return 0.0; }, 1.0)),
                     Vec3::Zero(), 10.0),
                  Error);
  CHECK_NOTHROW(g2(m, Vec3::Zero(), 10.0));
}

TEST_CASE("shell gradient closed form") {
  const ShellParams p{2, 2, {0, 0, 0, 1}};
  CHECK((shell_gradient_closed_form(p, Vec3(0.3, 0, 0)).value - 64 * kPi * Vec3::UnitZ()).norm() < 1e-12);
  const ShellParams q{2, 2, {1, 4, 4, 3}};
  CHECK((shell_gradient_closed_form(q, Vec3::Zero()).value - 192 * kPi * Vec3::UnitZ()).norm() < 1e-12);
  CHECK_THROWS_AS(shell_gradient_closed_form(q, Vec3(0.8, 0, 0)), Error);

  // The quadrature gradient minus the closed form stays bounded toward the domain edge.
  const auto m = shells({q});
  double prev = 0.0;
  for (double t : {0.5, 0.6, 0.7}) {
    const Vec3 xi(t, 0, 0);
    const double d = (grad_g2(m, xi, q.lambda()) - shell_gradient_closed_form(q, xi).value).norm();
    if (prev > 0.0) CHECK(d < 1.5 * prev);
    prev = d;
  }
}

TEST_CASE("hawking mass from G") {
  CHECK(hawking_from_g(0.0, 100.0) == 2.0);
  CHECK(hawking_from_g(-1.0, 100.0) > 2.0);
  CHECK(std::abs(hawking_from_g(64 * kPi * 100.0, 100.0)) < 1e-14);
}

#include <doctest.h>

#include <cmath>

#include "core/legendre.hpp"

using namespace wlab;
using namespace wlab::legendre;

TEST_CASE("legendre polynomials") {
  CHECK(legendre_eval(0, 0.7) == 1.0);
  CHECK(legendre_eval(1, -0.3) == doctest::Approx(-0.3).epsilon(1e-15));
  const double s = 0.3;
  CHECK(legendre_eval(5, s) == doctest::Approx((63 * std::pow(s, 5) - 70 * std::pow(s, 3) + 15 * s) / 8).epsilon(1e-14));
  // Multiprecision reference values.
  CHECK(legendre_eval(10, -0.7) == doctest::Approx(0.085805795531640625).epsilon(1e-13));
  CHECK(legendre_eval(40, 0.95) == doctest::Approx(0.19683281675736469348).epsilon(1e-12));
  CHECK(legendre_eval(17, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(legendre_eval(17, -1.0) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("legendre rejects arguments outside [-1, 1]") {
  CHECK_THROWS_AS(legendre_eval(3, 1.1), Error);
  CHECK_THROWS_AS(legendre_eval(-1, 0.0), Error);
  CHECK_NOTHROW(legendre_eval(3, 1.0 + 1e-13));
}

TEST_CASE("graph profile") {
  CHECK(graph_profile(Vec3::Zero(), 0.5) == -2.0);
  CHECK(graph_profile(Vec3(0.5, 0, 0), 1.0) == doctest::Approx(-1.2274112777602187623).epsilon(1e-9));
  SeriesTruncation tiny;
  tiny.max_degree = 5;
  CHECK_THROWS_AS(graph_profile(Vec3(0.9, 0, 0), 0.2, tiny), Error);
  try {
    graph_profile(Vec3(0.9, 0, 0), 0.2, tiny);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::non_convergence);
  }
}

TEST_CASE("truncation degree follows the geometric tail bound") {
  SeriesTruncation t;
  const int L = truncation_degree(0.5, t);
  CHECK(std::pow(0.5, L + 1) / 0.5 <= t.tail_tolerance);
  CHECK(std::pow(0.5, L) / 0.5 > t.tail_tolerance);
  SeriesTruncation bad;
  bad.max_degree = -1;
  CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("willmore operator of shifted spheres") {
  CHECK(willmore_operator_sphere(Vec3::Zero(), 10.0, 0.3) == doctest::Approx(-8e-4).epsilon(1e-14));
  CHECK(willmore_operator_sphere(Vec3::Zero(), 10.0, -0.9) == doctest::Approx(-8e-4).epsilon(1e-14));
  // 4 sum (l-1)(l+1)(l+2) 0.3^l summed to 50 terms in multiprecision.
  CHECK(willmore_operator_sphere(Vec3(0, 0, 0.3), 1.0, 1.0) == doctest::Approx(6.663890045814244065).epsilon(1e-9));
}

TEST_CASE("lagrange multiplier estimate") {
  CHECK(lagrange_multiplier_estimate(1.0) == 4.0);
  CHECK(lagrange_multiplier_estimate(10.0) == doctest::Approx(0.004).epsilon(1e-15));
  CHECK(lagrange_multiplier_estimate(100.0) / lagrange_multiplier_estimate(200.0) == doctest::Approx(8.0).epsilon(1e-14));
}

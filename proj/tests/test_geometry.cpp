#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gjms/geometry.hpp"

using namespace gjms;

TEST_CASE("gamma at integers and half-integers") {
  CHECK(gamma_half_integer(1) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-15));
  CHECK(gamma_half_integer(2) == 1.0);
  CHECK(gamma_half_integer(3) == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-15));
  CHECK(gamma_half_integer(4) == 1.0);
  CHECK(gamma_half_integer(5) == doctest::Approx(0.75 * std::sqrt(M_PI)).epsilon(1e-15));
  CHECK(gamma_half_integer(6) == 2.0);
  CHECK(gamma_half_integer(8) == 6.0);
  CHECK_THROWS(gamma_half_integer(0));
}

TEST_CASE("unit sphere areas") {
  CHECK(sphere_surface_area(2) == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
  CHECK(sphere_surface_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-15));
  CHECK(sphere_surface_area(4) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-15));
  CHECK(sphere_surface_area(5) == doctest::Approx(8.0 * M_PI * M_PI / 3.0).epsilon(1e-15));
  CHECK(sphere_surface_area(6) == doctest::Approx(std::pow(M_PI, 3)).epsilon(1e-15));
  CHECK(sphere_surface_area(7) ==
        doctest::Approx(16.0 * std::pow(M_PI, 3) / 15.0).epsilon(1e-15));
}

TEST_CASE("vector helpers") {
  const Vec3 a{1.0, 2.0, 3.0};
  const Vec3 b{-1.0, 0.5, 2.0};
  CHECK(dot(a, b) == doctest::Approx(6.0));
  CHECK(norm(Vec3{3.0, 4.0, 0.0}) == doctest::Approx(5.0));
  const Vec3 s = a + b;
  CHECK(s[0] == 0.0);
  CHECK(s[2] == 5.0);
  const Vec3 d = a - b;
  CHECK(d[1] == 1.5);
  const Vec3 m = 2.0 * a;
  CHECK(m[2] == 6.0);

  const VecN u{1.0, 2.0, 2.0};
  CHECK(norm(u) == doctest::Approx(3.0));
  CHECK(dot(Vec2{1.0, 2.0}, Vec2{3.0, 4.0}) == doctest::Approx(11.0));
}

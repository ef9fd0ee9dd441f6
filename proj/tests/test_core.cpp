#include "doctest.h"
#include "dli/core.hpp"
#include "test_util.hpp"

using namespace dli;

TEST_CASE("cross product examples") {
  CHECK(cross({1, 0, 0}, {0, 1, 0}) == Vec3{0, 0, 1});
  const Vec3 a{0.3, -1.7, 2.2};
  CHECK(cross(a, a) == Vec3{0, 0, 0});

  const Vec3 c = cross({0.1, 0.01, 0}, {0, 0, 0.1});
  CHECK(c.x == doctest::Approx(0.001).epsilon(1e-15));
  CHECK(c.y == doctest::Approx(-0.01).epsilon(1e-15));
  CHECK(c.z == 0.0);
}

TEST_CASE("hat map layout") {
  const Mat3 m = hat({1, 2, 3});
  const double expected[3][3] = {{0, 3, -2}, {-3, 0, 1}, {2, -1, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(m(i, j) == expected[i][j]);

  CHECK(hat({0, 0, 0}) == Mat3{});

  const Vec3 v{0.1, 0.01, 0};
  const Vec3 bv = hat({0, 0, 0.1}) * v;
  const Vec3 c = cross(v, {0, 0, 0.1});
  CHECK(bv.x == doctest::Approx(0.001).epsilon(1e-15));
  CHECK(bv.y == doctest::Approx(-0.01).epsilon(1e-15));
  CHECK(bv == c);
}

TEST_CASE("hat and cross properties on random inputs") {
  std::mt19937_64 rng(20240611);
  for (int n = 0; n < 1000; ++n) {
    const Vec3 b = test::random_vec(rng, -10, 10);
    const Vec3 v = test::random_vec(rng, -10, 10);
    const Vec3 lhs = hat(b) * v;
    const Vec3 rhs = cross(v, b);
    const double scale = norm(b) * norm(v);
    CHECK(norm_inf(lhs - rhs) <= 1e-15 * scale);

    const Mat3 h = hat(b);
    CHECK(h + h.transposed() == Mat3{});

    CHECK(std::abs(dot(v, cross(v, b))) <= 1e-15 * scale * norm(v));
  }
}

TEST_CASE("phase vector blocks") {
  const PhaseVec z({1, 2, 3}, {4, 5, 6});
  CHECK(z.position_block() == Vec3{1, 2, 3});
  CHECK(z.velocity_block() == Vec3{4, 5, 6});
  CHECK(z[3] == 4.0);
  CHECK(z.norm_inf() == 6.0);
  CHECK(dot(z, z) == 91.0);
}

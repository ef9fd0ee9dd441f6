#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "dli/diagnostics.hpp"
#include "dli/errors.hpp"
#include "test_util.hpp"

using namespace dli;

namespace {

const PhaseState kDriftStart{{0, 0.1, 0}, {0.1, 0.01, 0}};
const PhaseState kBananaStart{{1.05, 0, 0}, {0, 4.816e-4, 2.059e-3}};

ChargedParticleSystem drift_system() { return {1.0, 1.0, std::make_shared<CylindricalDriftField>()}; }
ChargedParticleSystem tokamak_system() { return {1.0, 1.0, std::make_shared<TokamakField>()}; }

Trajectory from_states(const std::vector<PhaseState>& states, double h = 1.0) {
  Trajectory t;
  t.h = h;
  for (std::size_t i = 0; i < states.size(); ++i) t.points.push_back({i, h * i, states[i], 0, 0.0});
  t.steps_taken = states.empty() ? 0 : states.size() - 1;
  return t;
}

// Rodrigues rotation of v about the unit axis k.
Vec3 rotate(const Vec3& v, const Vec3& k, double angle) {
  return std::cos(angle) * v + std::sin(angle) * cross(k, v) + (1 - std::cos(angle)) * dot(k, v) * k;
}

}  // namespace

TEST_CASE("toroidal momentum examples") {
  // (0 * 0.01 - 0.1 * 0.1) + R^3 / 3
  CHECK(toroidal_momentum(drift_system(), kDriftStart) == doctest::Approx(-0.01 + 1e-3 / 3).epsilon(1e-14));
  CHECK(toroidal_momentum(drift_system(), kDriftStart) == doctest::Approx(-0.00966667).epsilon(1e-6));
  // 1.05 * 4.816e-4 + (1 - 1.05)^2 / 4
  CHECK(toroidal_momentum(tokamak_system(), kBananaStart) ==
        doctest::Approx(1.05 * 4.816e-4 + 0.0025 / 4).epsilon(1e-14));

  const ChargedParticleSystem empty{1.0, 1.0, std::make_shared<UniformField>(Vec3{}, Vec3{})};
  CHECK(toroidal_momentum(empty, {{0.3, 0.4, 0.5}, {}}) == 0.0);
}

TEST_CASE("magnetic moment examples") {
  CHECK(magnetic_moment(drift_system(), kDriftStart) == doctest::Approx(0.0505).epsilon(1e-14));

  const ChargedParticleSystem axial{1.0, 1.0, std::make_shared<UniformField>(Vec3{0, 0, 1}, Vec3{})};
  CHECK(magnetic_moment(axial, {{}, {3, 4, 12}}) == doctest::Approx(12.5).epsilon(1e-15));
  CHECK(magnetic_moment(axial, {{}, {0, 0, 7}}) == 0.0);

  const ChargedParticleSystem tilted{1.0, 1.0, std::make_shared<UniformField>(Vec3{1, -2, 2}, Vec3{})};
  CHECK(std::abs(magnetic_moment(tilted, {{}, {0.5, -1, 1}})) <= 1e-16);

  const ChargedParticleSystem empty{1.0, 1.0, std::make_shared<UniformField>(Vec3{}, Vec3{})};
  CHECK_THROWS_AS(magnetic_moment(empty, kDriftStart), UnavailableError);
  CHECK_FALSE(try_evaluate(empty, Quantity::magnetic_moment, kDriftStart).has_value());
}

TEST_CASE("magnetic moment is invariant under rotation about the field") {
  std::mt19937_64 rng(8);
  for (const auto& sys : {drift_system(), tokamak_system()}) {
    for (int n = 0; n < 500; ++n) {
      const Vec3 x = test::random_point(rng, 0.5, 1.5, 0.3);
      const Vec3 v = test::random_vec(rng, -1, 1);
      const Vec3 b = sys.field().magnetic(x);
      const Vec3 rotated = rotate(v, b / norm(b), std::uniform_real_distribution<double>(0, 6.283)(rng));
      CHECK(test::rel_diff(magnetic_moment(sys, {x, rotated}), magnetic_moment(sys, {x, v})) <= 1e-14);
    }
  }
}

TEST_CASE("quantity names") {
  for (const char* name : {"H", "p_xi", "mu"}) CHECK(quantity_name(parse_quantity(name)) == name);
  CHECK_THROWS_AS(parse_quantity("energy"), ConfigError);
}

TEST_CASE("error series") {
  const ChargedParticleSystem empty{1.0, 1.0, std::make_shared<UniformField>(Vec3{}, Vec3{})};
  const Trajectory still = integrate(empty, parse_method("bdli"), {{0.2, 0.3, 0.4}, {}}, 0.1, 20);
  for (auto q : {Quantity::energy, Quantity::toroidal_momentum}) {
    const auto series = error_series(empty, still, q);
    REQUIRE(series.size() == 21);
    for (const auto& s : series) CHECK(s.error == 0.0);
  }
  CHECK_THROWS_AS(error_series(empty, still, Quantity::magnetic_moment), UnavailableError);

  const auto sys = drift_system();
  const Trajectory run = integrate(sys, parse_method("boris"), kDriftStart, std::numbers::pi / 10, 200);
  for (auto q : {Quantity::energy, Quantity::toroidal_momentum, Quantity::magnetic_moment}) {
    const auto abs_series = error_series(sys, run, q);
    const auto rel_series = error_series(sys, run, q, true);
    REQUIRE(abs_series.size() == run.points.size());
    CHECK(abs_series.front().error == 0.0);
    CHECK(abs_series.front().time == 0.0);
    const double q0 = *try_evaluate(sys, q, kDriftStart);
    for (std::size_t i = 0; i < abs_series.size(); ++i) {
      CHECK(abs_series[i].time == run.points[i].time);
      CHECK(abs_series[i].error == *try_evaluate(sys, q, run.points[i].state) - q0);
      CHECK(rel_series[i].error == doctest::Approx(abs_series[i].error / std::abs(q0)));
    }
    CHECK(max_abs_error(abs_series) > 0.0);
    CHECK(max_abs_error(abs_series, 0, 1) == 0.0);
  }
}

TEST_CASE("diagnostic records") {
  const auto sys = tokamak_system();
  const Trajectory run = integrate(sys, parse_method("bdli"), kBananaStart, std::numbers::pi / 10, 10);
  const auto recs = diagnostic_records(sys, run);
  REQUIRE(recs.size() == 11);
  CHECK(recs[0].radius == doctest::Approx(1.05));
  CHECK(recs[0].energy == energy(sys, kBananaStart));
  CHECK(recs[0].p_xi.has_value());
  CHECK(recs[0].mu.has_value());
  CHECK(recs[5].iterations == run.points[5].iterations);
  CHECK(recs[10].time == doctest::Approx(std::numbers::pi));
}

TEST_CASE("cylindrical projection") {
  const auto rz = cylindrical_projection(from_states({{{1.05, 0, 0}, {}}, {{0.6, 0.8, 0.3}, {}}}));
  REQUIRE(rz.size() == 2);
  CHECK(rz[0].radius == 1.05);
  CHECK(rz[0].z == 0.0);
  CHECK(rz[1].radius == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rz[1].z == 0.3);
}

TEST_CASE("poloidal angle unwraps and counts turns") {
  std::vector<CylindricalPoint> circle;
  const int n = 400;
  for (int i = 0; i < n; ++i) {
    const double a = 3 * 2 * std::numbers::pi * i / n;
    circle.push_back({1.0 + 0.1 * std::cos(a), 0.1 * std::sin(a)});
  }
  const auto theta = poloidal_angle(circle, 1.0);
  for (int i = 0; i < n; ++i) CHECK(theta[i] == doctest::Approx(3 * 2 * std::numbers::pi * i / n).epsilon(1e-12));
  CHECK(count_turning_points(theta, 10) == 0);

  // Back and forth in angle: a banana-like trace.
  std::vector<double> swing;
  for (int i = 0; i < 1000; ++i) swing.push_back(std::sin(2 * std::numbers::pi * i / 500.0) + 0.01 * std::sin(i * 1.3));
  CHECK(count_turning_points(swing, 20) == 4);
  CHECK_THROWS_AS(count_turning_points(swing, 0), std::invalid_argument);
}

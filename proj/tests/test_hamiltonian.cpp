#include <memory>
#include <vector>

#include "doctest.h"
#include "dli/hamiltonian.hpp"
#include "test_util.hpp"

using namespace dli;

namespace {

ChargedParticleSystem drift_system() { return {1.0, 1.0, std::make_shared<CylindricalDriftField>()}; }
ChargedParticleSystem tokamak_system() { return {1.0, 1.0, std::make_shared<TokamakField>()}; }

const PhaseState kDriftStart{{0, 0.1, 0}, {0.1, 0.01, 0}};
const PhaseState kBananaStart{{1.05, 0, 0}, {0, 4.816e-4, 2.059e-3}};

std::vector<ChargedParticleSystem> systems() {
  return {{1.0, 1.0, std::make_shared<CylindricalDriftField>()},
          {1.0, 1.0, std::make_shared<TokamakField>()},
          {2.0, -0.5, std::make_shared<UniformField>(Vec3{0.3, -0.2, 1.0}, Vec3{0.1, 0.05, -0.2})},
          {0.7, 1.3, std::make_shared<PolynomialWellField>(Vec3{0, 0, 1}, 1.0, 2)}};
}

PhaseState random_state(std::mt19937_64& rng) {
  return {test::random_point(rng, 0.2, 1.8, 0.5), test::random_vec(rng, -1, 1)};
}

}  // namespace

TEST_CASE("energy examples") {
  CHECK(energy(drift_system(), kDriftStart) == doctest::Approx(0.10505).epsilon(1e-14));
  // 0.5 * (4.816e-4^2 + 2.059e-3^2)
  CHECK(energy(tokamak_system(), kBananaStart) == doctest::Approx(2.23570978e-6).epsilon(1e-9));
  const ChargedParticleSystem still{1.0, 1.0, std::make_shared<UniformField>(Vec3{0, 0, 1}, Vec3{})};
  CHECK(energy(still, {{0, 0, 0}, {0, 0, 0}}) == 0.0);
}

TEST_CASE("energy gradient examples") {
  const PhaseVec g = grad_energy(drift_system(), kDriftStart);
  CHECK(g.position_block().x == 0.0);
  CHECK(g.position_block().y == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(g.position_block().z == 0.0);
  CHECK(g.velocity_block() == Vec3{0.1, 0.01, 0});

  const ChargedParticleSystem still{1.0, 1.0, std::make_shared<UniformField>(Vec3{0, 0, 1}, Vec3{})};
  CHECK(grad_energy(still, {{1, 2, 3}, {}}) == PhaseVec{});

  const PhaseVec gt = grad_energy(tokamak_system(), {{0.9, 0.3, -0.1}, kBananaStart.v});
  CHECK(gt == PhaseVec({0, 0, 0}, kBananaStart.v));
}

TEST_CASE("structure matrix blocks") {
  const ChargedParticleSystem sys{1.0, 1.0, std::make_shared<UniformField>(Vec3{0, 0, 0.1}, Vec3{})};
  const Mat6 k = k_matrix(sys, {0.3, 0.2, 0.1});
  const Mat3 bh = hat({0, 0, 0.1});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(k[i][j] == 0.0);
      CHECK(k[i][j + 3] == (i == j ? 1.0 : 0.0));
      CHECK(k[i + 3][j] == (i == j ? -1.0 : 0.0));
      CHECK(k[i + 3][j + 3] == bh(i, j));
    }

  const ChargedParticleSystem neutral{2.0, 0.0, std::make_shared<UniformField>(Vec3{0, 0, 5}, Vec3{})};
  const Mat6 kn = k_matrix(neutral, {});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(kn[i + 3][j + 3] == 0.0);
      CHECK(kn[i][j + 3] == (i == j ? 0.5 : 0.0));
      CHECK(kn[i + 3][j] == (i == j ? -0.5 : 0.0));
    }
}

TEST_CASE("structure matrix is skew and annihilates quadratic forms") {
  std::mt19937_64 rng(11);
  for (const auto& sys : systems()) {
    CAPTURE(sys.field().name());
    for (int n = 0; n < 200; ++n) {
      const PhaseState z = random_state(rng);
      const Mat6 k = k_matrix(sys, z.x);
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(k[i][j] + k[j][i] == 0.0);
      const PhaseVec u({test::random_vec(rng, -1, 1)}, {test::random_vec(rng, -1, 1)});
      CHECK(std::abs(dot(u, k * u)) <= 1e-15 * dot(u, u) * (1.0 + std::abs(sys.charge()) * 10));
    }
  }
}

TEST_CASE("vector field examples") {
  const PhaseVec f = vector_field(drift_system(), kDriftStart);
  const double expected[6] = {0.1, 0.01, 0, 0.001, 0.99, 0};
  for (int i = 0; i < 6; ++i) CHECK(f[i] == doctest::Approx(expected[i]).epsilon(1e-14));

  const ChargedParticleSystem empty{1.0, 1.0, std::make_shared<UniformField>(Vec3{}, Vec3{})};
  CHECK(vector_field(empty, {{1, 1, 1}, {}}) == PhaseVec{});
}

TEST_CASE("vector field equals K times grad H") {
  std::mt19937_64 rng(1234);
  for (const auto& sys : systems()) {
    CAPTURE(sys.field().name());
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
      const PhaseState z = random_state(rng);
      const PhaseVec direct = vector_field(sys, z);
      const PhaseVec via_k = k_matrix(sys, z.x) * grad_energy(sys, z);
      const PhaseVec via_blocks = apply_structure(sys, sys.field().magnetic(z.x), grad_energy(sys, z));
      const double scale = std::max(direct.norm_inf(), 1e-300);
      worst = std::max(worst, (direct - via_k).norm_inf() / scale);
      worst = std::max(worst, (direct - via_blocks).norm_inf() / scale);
    }
    CHECK(worst <= 1e-13);
  }
}

TEST_CASE("energy gradient matches central differences at second order") {
  std::mt19937_64 rng(99);
  for (const auto& sys : systems()) {
    CAPTURE(sys.field().name());
    for (int n = 0; n < 20; ++n) {
      const PhaseState z = random_state(rng);
      const PhaseVec d({test::random_vec(rng, -1, 1)}, {test::random_vec(rng, -1, 1)});
      const double exact = dot(grad_energy(sys, z), d);
      auto shifted = [&](double e) {
        return PhaseState{z.x + e * d.position_block(), z.v + e * d.velocity_block()};
      };
      std::vector<double> err;
      for (double eps : {1e-3, 1e-4, 1e-5}) {
        const double fd = (energy(sys, shifted(eps)) - energy(sys, shifted(-eps))) / (2 * eps);
        err.push_back(std::abs(fd - exact));
      }
      // Quadratic H is differentiated exactly; otherwise errors fall about 100x per decade.
      const double floor = 1e-9 * (1.0 + std::abs(exact));
      if (err[0] > floor && err[1] > floor) {
        const double slope = std::log10(err[0] / err[1]);
        CHECK(slope == doctest::Approx(2.0).epsilon(0.1));
      }
      CHECK(err[2] <= 1e-7 * (1.0 + std::abs(exact)));
    }
  }
}

TEST_CASE("system invariants") {
  auto field = std::make_shared<UniformField>(Vec3{0, 0, 1}, Vec3{});
  CHECK_THROWS_AS(ChargedParticleSystem(0.0, 1.0, field), std::invalid_argument);
  CHECK_THROWS_AS(ChargedParticleSystem(-1.0, 1.0, field), std::invalid_argument);
  CHECK_THROWS_AS(ChargedParticleSystem(1.0, 1.0, nullptr), std::invalid_argument);
}

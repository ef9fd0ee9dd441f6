#include "dli/hamiltonian.hpp"

#include <stdexcept>

namespace dli {

PhaseVec operator*(const Mat6& k, const PhaseVec& u) {
  PhaseVec r;
  for (std::size_t i = 0; i < 6; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < 6; ++j) s += k[i][j] * u[j];
    r[i] = s;
  }
  return r;
}

ChargedParticleSystem::ChargedParticleSystem(double mass, double charge,
                                             std::shared_ptr<const FieldModel> field)
    : mass_(mass), charge_(charge), field_(std::move(field)) {
  if (!(mass_ > 0.0) || !std::isfinite(mass_))
    throw std::invalid_argument("particle mass must be positive and finite");
  if (!std::isfinite(charge_)) throw std::invalid_argument("particle charge must be finite");
  if (!field_) throw std::invalid_argument("particle system needs a field model");
}

double energy(const ChargedParticleSystem& sys, const PhaseState& z) {
  return 0.5 * sys.mass() * dot(z.v, z.v) + sys.charge() * sys.field().potential(z.x);
}

PhaseVec grad_energy(const ChargedParticleSystem& sys, const PhaseState& z) {
  return {-sys.charge() * sys.field().electric(z.x), sys.mass() * z.v};
}

Mat6 k_matrix(const ChargedParticleSystem& sys, const Vec3& x) {
  const double inv_m = 1.0 / sys.mass();
  const Mat3 bh = hat(sys.field().magnetic(x));
  const double c = sys.charge() * inv_m * inv_m;
  Mat6 k{};
  for (std::size_t i = 0; i < 3; ++i) {
    k[i][i + 3] = inv_m;
    k[i + 3][i] = -inv_m;
    for (std::size_t j = 0; j < 3; ++j) k[i + 3][j + 3] = c * bh(i, j);
  }
  return k;
}

PhaseVec apply_structure(const ChargedParticleSystem& sys, const Vec3& b, const PhaseVec& u) {
  const double inv_m = 1.0 / sys.mass();
  const Vec3 up = u.position_block();
  const Vec3 lo = u.velocity_block();
  // hat(B) lo == lo x B
  return {inv_m * lo, -inv_m * up + (sys.charge() * inv_m * inv_m) * cross(lo, b)};
}

PhaseVec vector_field(const ChargedParticleSystem& sys, const PhaseState& z) {
  const FieldModel& f = sys.field();
  const double qm = sys.charge() / sys.mass();
  return {z.v, qm * (f.electric(z.x) + cross(z.v, f.magnetic(z.x)))};
}

}  // namespace dli

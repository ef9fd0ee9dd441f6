#pragma once

#include <array>
#include <memory>

#include "dli/core.hpp"
#include "dli/fields.hpp"

namespace dli {

//! Particle position and velocity, z = [x, v].
struct PhaseState {
  Vec3 x;
  Vec3 v;

  PhaseVec as_vec() const { return {x, v}; }
  static PhaseState from_vec(const PhaseVec& z) { return {z.position_block(), z.velocity_block()}; }
  double norm_inf() const { return std::max(dli::norm_inf(x), dli::norm_inf(v)); }
  bool is_finite() const { return dli::is_finite(x) && dli::is_finite(v); }

  friend bool operator==(const PhaseState&, const PhaseState&) = default;
};

//! Point (1 - c) z0 + c z1 on the segment joining two states.
inline PhaseState lerp(const PhaseState& z0, const PhaseState& z1, double c) {
  return {(1.0 - c) * z0.x + c * z1.x, (1.0 - c) * z0.v + c * z1.v};
}

//! Dense 6x6 matrix, row-major.
using Mat6 = std::array<std::array<double, 6>, 6>;

PhaseVec operator*(const Mat6& k, const PhaseVec& u);

//! Mass, charge and the static field the particle moves in.
class ChargedParticleSystem {
 public:
  ChargedParticleSystem(double mass, double charge, std::shared_ptr<const FieldModel> field);

  double mass() const { return mass_; }
  double charge() const { return charge_; }
  const FieldModel& field() const { return *field_; }
  const std::shared_ptr<const FieldModel>& field_ptr() const { return field_; }

 private:
  double mass_;
  double charge_;
  std::shared_ptr<const FieldModel> field_;
};

//! H(z) = m v.v / 2 + q phi(x).
double energy(const ChargedParticleSystem& sys, const PhaseState& z);

//! grad H = [q grad(phi); m v] = [-q E(x); m v].
PhaseVec grad_energy(const ChargedParticleSystem& sys, const PhaseState& z);

//! K(x) = [[0, I/m], [-I/m, (q/m^2) hat(B(x))]], skew-symmetric.
Mat6 k_matrix(const ChargedParticleSystem& sys, const Vec3& x);

//! K(x) * u using the block structure, with B(x) already evaluated.
PhaseVec apply_structure(const ChargedParticleSystem& sys, const Vec3& b, const PhaseVec& u);

//! f(z) = (v, (q/m)(E + v x B)), identical to K(x) grad H(z).
PhaseVec vector_field(const ChargedParticleSystem& sys, const PhaseState& z);

}  // namespace dli

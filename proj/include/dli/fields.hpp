#pragma once

#include <memory>
#include <string>

#include "dli/core.hpp"

namespace dli {

//! Evaluation inside this cylindrical radius raises SingularityError.
inline constexpr double kAxisGuardRadius = 1e-12;

/*!
 * Static analytic electromagnetic field.
 *
 * Implementations satisfy E = -grad(phi) and B = curl(A) wherever the
 * potentials are provided. All evaluators are const and thread-safe.
 */
class FieldModel {
 public:
  virtual ~FieldModel() = default;

  virtual std::string name() const = 0;

  virtual Vec3 magnetic(const Vec3& x) const = 0;
  virtual Vec3 electric(const Vec3& x) const = 0;
  //! Scalar potential (energy per unit charge).
  virtual double potential(const Vec3& x) const = 0;

  virtual bool has_vector_potential() const { return false; }
  //! Throws UnavailableError unless has_vector_potential().
  virtual Vec3 vector_potential(const Vec3& x) const;
};

//! B = R e_z, E = eps (x e_x + y e_y) / R^3, phi = eps / R, A = (R^2 / 3) e_xi.
class CylindricalDriftField final : public FieldModel {
 public:
  explicit CylindricalDriftField(double coupling = 1e-2) : coupling_(coupling) {}

  std::string name() const override { return "cylindrical_drift"; }
  Vec3 magnetic(const Vec3& x) const override;
  Vec3 electric(const Vec3& x) const override;
  double potential(const Vec3& x) const override;
  bool has_vector_potential() const override { return true; }
  Vec3 vector_potential(const Vec3& x) const override;

  double coupling() const { return coupling_; }

 private:
  double coupling_;
};

/*!
 * Axisymmetric tokamak field, B = B0 r / (q R) e_theta + B0 R0 / R e_xi,
 * evaluated in its Cartesian form. Written for B0 = R0 = 1, q = 2 but
 * parametrized in all three; r is the minor radius about (R0, 0).
 * There is no electric field.
 */
class TokamakField final : public FieldModel {
 public:
  TokamakField(double b0 = 1.0, double r0 = 1.0, double safety_factor = 2.0);

  std::string name() const override { return "tokamak"; }
  Vec3 magnetic(const Vec3& x) const override;
  Vec3 electric(const Vec3& x) const override;
  double potential(const Vec3& x) const override;
  bool has_vector_potential() const override { return true; }
  Vec3 vector_potential(const Vec3& x) const override;

  double b0() const { return b0_; }
  double r0() const { return r0_; }
  double safety_factor() const { return safety_factor_; }

 private:
  double b0_;
  double r0_;
  double safety_factor_;
};

//! Constant B and E; phi = -E.x and A = (B x x) / 2.
class UniformField final : public FieldModel {
 public:
  UniformField(const Vec3& b, const Vec3& e) : b_(b), e_(e) {}

  std::string name() const override { return "uniform"; }
  Vec3 magnetic(const Vec3&) const override { return b_; }
  Vec3 electric(const Vec3&) const override { return e_; }
  double potential(const Vec3& x) const override { return -dot(e_, x); }
  bool has_vector_potential() const override { return true; }
  Vec3 vector_potential(const Vec3& x) const override { return 0.5 * cross(b_, x); }

 private:
  Vec3 b_;
  Vec3 e_;
};

/*!
 * Constant B plus the radial polynomial well phi = k (x.x)^p, p >= 1.
 * The resulting Hamiltonian m v.v / 2 + q phi is a polynomial of degree 2p.
 */
class PolynomialWellField final : public FieldModel {
 public:
  PolynomialWellField(const Vec3& b, double strength, int power);

  std::string name() const override { return "polynomial_well"; }
  Vec3 magnetic(const Vec3&) const override { return b_; }
  Vec3 electric(const Vec3& x) const override;
  double potential(const Vec3& x) const override;
  bool has_vector_potential() const override { return true; }
  Vec3 vector_potential(const Vec3& x) const override { return 0.5 * cross(b_, x); }

  int power() const { return power_; }

 private:
  Vec3 b_;
  double strength_;
  int power_;
};

//! Cylindrical radius sqrt(x^2 + y^2).
inline double cylindrical_radius(const Vec3& x) { return std::hypot(x.x, x.y); }

}  // namespace dli

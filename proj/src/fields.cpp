#include "dli/fields.hpp"

#include <cmath>
#include <sstream>

#include "dli/errors.hpp"

namespace dli {

namespace {

double checked_radius(const Vec3& x, const char* model) {
  const double r = cylindrical_radius(x);
  if (!(r >= kAxisGuardRadius)) {
    std::ostringstream msg;
    msg << model << ": field evaluated on the axis (R = " << r << ")";
    throw SingularityError(msg.str());
  }
  return r;
}

}  // namespace

Vec3 FieldModel::vector_potential(const Vec3&) const {
  throw UnavailableError(name() + ": vector potential not provided");
}

// ---------------------------------------------------------------------------
// CylindricalDriftField

Vec3 CylindricalDriftField::magnetic(const Vec3& x) const {
  return {0.0, 0.0, checked_radius(x, "cylindrical_drift")};
}

Vec3 CylindricalDriftField::electric(const Vec3& x) const {
  const double r = checked_radius(x, "cylindrical_drift");
  const double s = coupling_ / (r * r * r);
  return {s * x.x, s * x.y, 0.0};
}

double CylindricalDriftField::potential(const Vec3& x) const {
  return coupling_ / checked_radius(x, "cylindrical_drift");
}

Vec3 CylindricalDriftField::vector_potential(const Vec3& x) const {
  const double r = checked_radius(x, "cylindrical_drift");
  // A_xi = R^2 / 3, e_xi = (-y, x, 0) / R
  const double s = r / 3.0;
  return {-s * x.y, s * x.x, 0.0};
}

// ---------------------------------------------------------------------------
// TokamakField

TokamakField::TokamakField(double b0, double r0, double safety_factor)
    : b0_(b0), r0_(r0), safety_factor_(safety_factor) {}

Vec3 TokamakField::magnetic(const Vec3& x) const {
  const double r = checked_radius(x, "tokamak");
  const double r2 = r * r;
  // Toroidal part B0 R0 / R e_xi plus poloidal part B0 / (q R) (e_xi x r_vec),
  // r_vec = (R - R0) e_R + z e_z. For B0 = R0 = 1, q = 2 this reads
  //   B = -(2y + xz) / (2R^2) e_x + (2x - yz) / (2R^2) e_y + (R - 1) / (2R) e_z.
  const double tor = b0_ * r0_ / r2;
  const double pol = b0_ / (safety_factor_ * r);
  const double br = -pol * x.z;  // e_R coefficient
  return {-tor * x.y + br * x.x / r, tor * x.x + br * x.y / r, pol * (r - r0_)};
}

Vec3 TokamakField::electric(const Vec3& x) const {
  checked_radius(x, "tokamak");
  return {};
}

double TokamakField::potential(const Vec3& x) const {
  checked_radius(x, "tokamak");
  return 0.0;
}

Vec3 TokamakField::vector_potential(const Vec3& x) const {
  const double r = checked_radius(x, "tokamak");
  const double dr = r - r0_;
  // A_R = a z / R, A_xi = B0 ((R - R0)^2 + z^2) / (2 q R), A_z = -a ln R with
  // a = B0 R0 / 2; reduces to z/(2R), ((1-R)^2+z^2)/(4R), -(ln R)/2.
  const double a = 0.5 * b0_ * r0_;
  const double a_r = a * x.z / r;
  const double a_xi = b0_ * (dr * dr + x.z * x.z) / (2.0 * safety_factor_ * r);
  const double a_z = -a * std::log(r);
  return {(a_r * x.x - a_xi * x.y) / r, (a_r * x.y + a_xi * x.x) / r, a_z};
}

// ---------------------------------------------------------------------------
// PolynomialWellField

PolynomialWellField::PolynomialWellField(const Vec3& b, double strength, int power)
    : b_(b), strength_(strength), power_(power) {
  if (power < 1) throw std::invalid_argument("polynomial_well: power must be >= 1");
}

double PolynomialWellField::potential(const Vec3& x) const {
  return strength_ * std::pow(dot(x, x), power_);
}

Vec3 PolynomialWellField::electric(const Vec3& x) const {
  // -grad(k s^p) = -2 p k s^(p-1) x, s = x.x
  const double s = dot(x, x);
  const double c = -2.0 * power_ * strength_ * std::pow(s, power_ - 1);
  return c * x;
}

}  // namespace dli

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dli/hamiltonian.hpp"
#include "dli/integrators.hpp"

namespace dli {

//! p_xi = m (x v_y - y v_x) + q R A_xi(x), the toroidal part of p = m v + q A.
double toroidal_momentum(const ChargedParticleSystem& sys, const PhaseState& z);

//! mu = |v_perp|^2 / (2 |B|). Throws UnavailableError where B vanishes.
double magnetic_moment(const ChargedParticleSystem& sys, const PhaseState& z);

enum class Quantity { energy, toroidal_momentum, magnetic_moment };

//! "H", "p_xi", "mu".
Quantity parse_quantity(std::string_view name);
std::string_view quantity_name(Quantity q);

//! Value of a quantity; nullopt when the model cannot provide it.
std::optional<double> try_evaluate(const ChargedParticleSystem& sys, Quantity q, const PhaseState& z);

struct DiagnosticRecord {
  double time = 0.0;
  double energy = 0.0;
  std::optional<double> p_xi;
  std::optional<double> mu;
  double radius = 0.0;
  double z_coord = 0.0;
  int iterations = 0;
};

std::vector<DiagnosticRecord> diagnostic_records(const ChargedParticleSystem& sys, const Trajectory& traj);

struct ErrorSample {
  double time;
  double error;
};

/*!
 * Q(z_n) - Q(z_0) for every recorded state, or (Q(z_n) - Q(z_0)) / |Q(z_0)|
 * when relative is set. Throws UnavailableError if Q cannot be evaluated.
 */
std::vector<ErrorSample> error_series(const ChargedParticleSystem& sys, const Trajectory& traj, Quantity q,
                                      bool relative = false);

struct CylindricalPoint {
  double radius;
  double z;
};

std::vector<CylindricalPoint> cylindrical_projection(const Trajectory& traj);

//! Unwrapped poloidal angle atan2(z, R - axis_radius) along the projection.
std::vector<double> poloidal_angle(const std::vector<CylindricalPoint>& rz, double axis_radius);

/*!
 * Number of sign reversals in the differences of non-overlapping block means
 * of `series`. Averaging over blocks spanning many gyro-periods removes the
 * fast gyration so only turning points of the slow orbit remain.
 */
int count_turning_points(const std::vector<double>& series, std::size_t block);

//! Largest |e| over [begin, end) of an error series.
double max_abs_error(const std::vector<ErrorSample>& series, std::size_t begin = 0,
                     std::size_t end = static_cast<std::size_t>(-1));

}  // namespace dli

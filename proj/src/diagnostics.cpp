#include "dli/diagnostics.hpp"

#include <cmath>
#include <numbers>

#include "dli/errors.hpp"

namespace dli {

double toroidal_momentum(const ChargedParticleSystem& sys, const PhaseState& z) {
  const Vec3 a = sys.field().vector_potential(z.x);
  // R A_xi = x A_y - y A_x
  return sys.mass() * (z.x.x * z.v.y - z.x.y * z.v.x) + sys.charge() * (z.x.x * a.y - z.x.y * a.x);
}

double magnetic_moment(const ChargedParticleSystem& sys, const PhaseState& z) {
  const Vec3 b = sys.field().magnetic(z.x);
  const double b_mag = norm(b);
  if (!(b_mag > 0.0)) throw UnavailableError("magnetic moment undefined where |B| = 0");
  const Vec3 unit = b / b_mag;
  const Vec3 v_perp = z.v - dot(z.v, unit) * unit;
  return dot(v_perp, v_perp) / (2.0 * b_mag);
}

Quantity parse_quantity(std::string_view name) {
  if (name == "H") return Quantity::energy;
  if (name == "p_xi") return Quantity::toroidal_momentum;
  if (name == "mu") return Quantity::magnetic_moment;
  throw ConfigError("unknown quantity '" + std::string(name) + "' (expected H, p_xi or mu)");
}

std::string_view quantity_name(Quantity q) {
  switch (q) {
    case Quantity::energy:
      return "H";
    case Quantity::toroidal_momentum:
      return "p_xi";
    case Quantity::magnetic_moment:
      return "mu";
  }
  return "?";
}

namespace {

double evaluate(const ChargedParticleSystem& sys, Quantity q, const PhaseState& z) {
  switch (q) {
    case Quantity::energy:
      return energy(sys, z);
    case Quantity::toroidal_momentum:
      return toroidal_momentum(sys, z);
    case Quantity::magnetic_moment:
      return magnetic_moment(sys, z);
  }
  return 0.0;
}

}  // namespace

std::optional<double> try_evaluate(const ChargedParticleSystem& sys, Quantity q, const PhaseState& z) {
  try {
    return evaluate(sys, q, z);
  } catch (const UnavailableError&) {
    return std::nullopt;
  }
}

std::vector<DiagnosticRecord> diagnostic_records(const ChargedParticleSystem& sys, const Trajectory& traj) {
  std::vector<DiagnosticRecord> out;
  out.reserve(traj.points.size());
  for (const auto& p : traj.points) {
    DiagnosticRecord r;
    r.time = p.time;
    r.energy = energy(sys, p.state);
    r.p_xi = try_evaluate(sys, Quantity::toroidal_momentum, p.state);
    r.mu = try_evaluate(sys, Quantity::magnetic_moment, p.state);
    r.radius = cylindrical_radius(p.state.x);
    r.z_coord = p.state.x.z;
    r.iterations = p.iterations;
    out.push_back(r);
  }
  return out;
}

std::vector<ErrorSample> error_series(const ChargedParticleSystem& sys, const Trajectory& traj, Quantity q,
                                      bool relative) {
  std::vector<ErrorSample> out;
  if (traj.points.empty()) return out;
  out.reserve(traj.points.size());
  const double q0 = evaluate(sys, q, traj.points.front().state);
  const double scale = relative ? std::abs(q0) : 1.0;
  for (const auto& p : traj.points) {
    const double d = evaluate(sys, q, p.state) - q0;
    out.push_back({p.time, relative ? d / scale : d});
  }
  return out;
}

std::vector<CylindricalPoint> cylindrical_projection(const Trajectory& traj) {
  std::vector<CylindricalPoint> out;
  out.reserve(traj.points.size());
  for (const auto& p : traj.points) out.push_back({cylindrical_radius(p.state.x), p.state.x.z});
  return out;
}

std::vector<double> poloidal_angle(const std::vector<CylindricalPoint>& rz, double axis_radius) {
  std::vector<double> theta;
  theta.reserve(rz.size());
  double offset = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < rz.size(); ++i) {
    const double raw = std::atan2(rz[i].z, rz[i].radius - axis_radius);
    if (i > 0) {
      const double jump = raw - prev;
      if (jump > std::numbers::pi) offset -= 2.0 * std::numbers::pi;
      if (jump < -std::numbers::pi) offset += 2.0 * std::numbers::pi;
    }
    prev = raw;
    theta.push_back(raw + offset);
  }
  return theta;
}

int count_turning_points(const std::vector<double>& series, std::size_t block) {
  if (block == 0) throw std::invalid_argument("block length must be >= 1");
  std::vector<double> means;
  for (std::size_t start = 0; start + block <= series.size(); start += block) {
    double s = 0.0;
    for (std::size_t i = start; i < start + block; ++i) s += series[i];
    means.push_back(s / static_cast<double>(block));
  }
  int turns = 0;
  int last_sign = 0;
  for (std::size_t i = 1; i < means.size(); ++i) {
    const double d = means[i] - means[i - 1];
    const int sign = (d > 0.0) - (d < 0.0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) ++turns;
    last_sign = sign;
  }
  return turns;
}

double max_abs_error(const std::vector<ErrorSample>& series, std::size_t begin, std::size_t end) {
  end = std::min(end, series.size());
  double m = 0.0;
  for (std::size_t i = begin; i < end; ++i) m = std::max(m, std::abs(series[i].error));
  return m;
}

}  // namespace dli

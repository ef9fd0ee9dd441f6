#include "dli/integrators.hpp"

#include <sstream>

#include "dli/errors.hpp"

namespace dli {

void SolverOptions::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("solver max_iterations must be >= 1");
}

PhaseVec dli_residual(const ChargedParticleSystem& sys, const QuadratureRule& rule,
                      const PhaseState& z0, const PhaseState& z_trial, double h) {
  const PhaseVec g = weighted_gradient(sys, rule, z0, z_trial);
  const Vec3 b_mid = sys.field().magnetic(0.5 * (z0.x + z_trial.x));
  const PhaseVec kg = apply_structure(sys, b_mid, g);
  PhaseVec r;
  const PhaseVec a = z_trial.as_vec();
  const PhaseVec b = z0.as_vec();
  for (std::size_t i = 0; i < 6; ++i) r[i] = a[i] - b[i] - h * kg[i];
  return r;
}

StepReport dli_step(const ChargedParticleSystem& sys, const QuadratureRule& rule, const PhaseState& z0,
                    double h, const SolverOptions& opts) {
  const FieldModel& field = sys.field();
  const double qm = sys.charge() / sys.mass();
  const auto& nodes = rule.nodes();
  const auto& weights = rule.weights();
  const double threshold = opts.tolerance * (1.0 + z0.norm_inf());

  // E(x0) does not change across iterations.
  const Vec3 e0 = field.electric(z0.x);

  PhaseState z = z0;
  if (opts.predictor == Predictor::explicit_euler) {
    const Vec3 b0 = field.magnetic(z0.x);
    z.v = z0.v + h * qm * (e0 + cross(z0.v, b0));
    z.x = z0.x + h * z0.v;
  }

  StepReport report;
  for (int k = 1; k <= opts.max_iterations; ++k) {
    Vec3 e_avg;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double c = nodes[i];
      const Vec3 e = c == 0.0 ? e0 : field.electric((1.0 - c) * z0.x + c * z.x);
      e_avg += weights[i] * e;
    }
    const Vec3 b_mid = field.magnetic(0.5 * (z0.x + z.x));
    const Vec3 v_mid = 0.5 * (z0.v + z.v);

    PhaseState next;
    next.v = z0.v + h * qm * (e_avg + cross(v_mid, b_mid));
    next.x = z0.x + (0.5 * h) * (z0.v + next.v);

    const double inc = std::max(norm_inf(next.x - z.x), norm_inf(next.v - z.v));
    z = next;
    report.iterations = k;
    report.residual = inc;
    if (inc <= threshold) {
      report.converged = true;
      break;
    }
  }
  report.state = z;
  return report;
}

PhaseState boris_step(const ChargedParticleSystem& sys, const PhaseState& z0, double h) {
  const FieldModel& field = sys.field();
  const Vec3 x_half = z0.x + (0.5 * h) * z0.v;
  const double kick = 0.5 * h * sys.charge() / sys.mass();
  const Vec3 e = field.electric(x_half);
  const Vec3 t = kick * field.magnetic(x_half);
  const Vec3 s = (2.0 / (1.0 + dot(t, t))) * t;

  const Vec3 v_minus = z0.v + kick * e;
  const Vec3 v_prime = v_minus + cross(v_minus, t);
  const Vec3 v_plus = v_minus + cross(v_prime, s);
  const Vec3 v1 = v_plus + kick * e;
  return {x_half + (0.5 * h) * v1, v1};
}

PhaseState rk4_step(const ChargedParticleSystem& sys, const PhaseState& z0, double h) {
  auto shifted = [&](const PhaseVec& k, double a) {
    return PhaseState{z0.x + a * k.position_block(), z0.v + a * k.velocity_block()};
  };
  const PhaseVec k1 = vector_field(sys, z0);
  const PhaseVec k2 = vector_field(sys, shifted(k1, 0.5 * h));
  const PhaseVec k3 = vector_field(sys, shifted(k2, 0.5 * h));
  const PhaseVec k4 = vector_field(sys, shifted(k3, h));
  PhaseState z1 = z0;
  const double w = h / 6.0;
  z1.x += w * (k1.position_block() + 2.0 * k2.position_block() + 2.0 * k3.position_block() +
               k4.position_block());
  z1.v += w * (k1.velocity_block() + 2.0 * k2.velocity_block() + 2.0 * k3.velocity_block() +
               k4.velocity_block());
  return z1;
}

std::string Method::label() const {
  switch (kind) {
    case MethodKind::boris:
      return "boris";
    case MethodKind::rk4:
      return "rk4";
    case MethodKind::dli:
      break;
  }
  const std::string r = rule ? rule->name() : "boole";
  return r == "boole" ? "bdli" : "dli:" + r;
}

Method parse_method(const std::string& name, const std::optional<QuadratureRule>& custom_rule) {
  if (name == "boris") return {MethodKind::boris, std::nullopt};
  if (name == "rk4") return {MethodKind::rk4, std::nullopt};
  if (name == "bdli") return {MethodKind::dli, QuadratureRule::builtin("boole")};
  constexpr std::string_view prefix = "dli:";
  if (name.starts_with(prefix)) {
    const std::string rule = name.substr(prefix.size());
    if (rule == "custom") {
      if (!custom_rule) throw ConfigError("method 'dli:custom' needs a custom_rule");
      return {MethodKind::dli, custom_rule};
    }
    return {MethodKind::dli, QuadratureRule::builtin(rule)};
  }
  throw ConfigError("unknown method '" + name + "' (expected bdli, dli:<rule>, boris or rk4)");
}

Trajectory integrate(const ChargedParticleSystem& sys, const Method& method, const PhaseState& z0, double h,
                     std::size_t n_steps, const SolverOptions& opts, std::size_t stride) {
  if (!z0.is_finite()) throw std::invalid_argument("initial state must be finite");
  if (!std::isfinite(h)) throw std::invalid_argument("step size must be finite");
  if (stride == 0) throw std::invalid_argument("recording stride must be >= 1");
  opts.validate();
  if (method.kind == MethodKind::dli && !method.rule)
    throw std::invalid_argument("line-integral method needs a quadrature rule");

  Trajectory traj;
  traj.h = h;
  traj.points.reserve(n_steps / stride + 2);
  traj.points.push_back({0, 0.0, z0, 0, 0.0});

  PhaseState z = z0;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    int iterations = 0;
    double residual = 0.0;
    try {
      switch (method.kind) {
        case MethodKind::dli: {
          const StepReport rep = dli_step(sys, *method.rule, z, h, opts);
          if (!rep.converged) {
            std::ostringstream msg;
            msg << "fixed-point solver did not converge at step " << n << " after " << rep.iterations
                << " iterations (last increment " << rep.residual << ")";
            throw IntegrationError(FailureKind::non_convergence, n, msg.str(), std::move(traj));
          }
          z = rep.state;
          iterations = rep.iterations;
          residual = rep.residual;
          break;
        }
        case MethodKind::boris:
          z = boris_step(sys, z, h);
          break;
        case MethodKind::rk4:
          z = rk4_step(sys, z, h);
          break;
      }
    } catch (const SingularityError& e) {
      std::ostringstream msg;
      msg << "field singularity at step " << n << ": " << e.what();
      throw IntegrationError(FailureKind::singularity, n, msg.str(), std::move(traj));
    }
    traj.steps_taken = n;
    traj.total_iterations += iterations;
    if (n % stride == 0 || n == n_steps)
      traj.points.push_back({n, static_cast<double>(n) * h, z, iterations, residual});
  }
  return traj;
}

}  // namespace dli

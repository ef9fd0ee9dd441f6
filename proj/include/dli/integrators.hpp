#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dli/hamiltonian.hpp"
#include "dli/quadrature.hpp"

namespace dli {

enum class Predictor { frozen, explicit_euler };

struct SolverOptions {
  //! Successive iterates must agree to tolerance * (1 + |z0|_inf).
  double tolerance = 1e-14;
  int max_iterations = 200;
  Predictor predictor = Predictor::explicit_euler;

  //! Throws std::invalid_argument when tolerance <= 0 or max_iterations < 1.
  void validate() const;
};

struct StepReport {
  PhaseState state;
  int iterations = 0;
  //! Infinity norm of the last fixed-point increment.
  double residual = 0.0;
  bool converged = false;
};

/*!
 * z_trial - z0 - h K((z0 + z_trial)/2) sum_i w_i grad H((1 - c_i) z0 + c_i z_trial).
 *
 * Evaluated straight from the definition (full weighted gradient, block
 * product); zero exactly when z_trial solves the line-integral step.
 */
PhaseVec dli_residual(const ChargedParticleSystem& sys, const QuadratureRule& rule,
                      const PhaseState& z0, const PhaseState& z_trial, double h);

/*!
 * One discrete line integral step, solved by fixed-point iteration.
 *
 * With rule = boole this is the BDLI method. The position update is
 * carried as x1 = x0 + h (v0 + v1) / 2 and only the velocity block is
 * iterated through the quadrature sum. A non-converged step is reported
 * through StepReport::converged, never silently accepted.
 */
StepReport dli_step(const ChargedParticleSystem& sys, const QuadratureRule& rule, const PhaseState& z0,
                    double h, const SolverOptions& opts = {});

//! Boris pusher, drift-kick-drift: fields sampled at x0 + (h/2) v0.
PhaseState boris_step(const ChargedParticleSystem& sys, const PhaseState& z0, double h);

//! Classical fourth-order Runge-Kutta step on vector_field.
PhaseState rk4_step(const ChargedParticleSystem& sys, const PhaseState& z0, double h);

enum class MethodKind { dli, boris, rk4 };

//! A one-step method and, for the line-integral family, its quadrature rule.
struct Method {
  MethodKind kind = MethodKind::dli;
  std::optional<QuadratureRule> rule;

  //! "bdli", "dli:boole", "boris", ...
  std::string label() const;
};

/*!
 * Resolve "bdli", "dli:<rule>", "boris" or "rk4". "dli:custom" takes the
 * supplied custom rule. Throws ConfigError on anything else.
 */
Method parse_method(const std::string& name, const std::optional<QuadratureRule>& custom_rule = std::nullopt);

struct TrajectoryPoint {
  std::size_t step = 0;
  double time = 0.0;
  PhaseState state;
  //! Fixed-point iterations spent on the step that produced this state (0 for explicit methods).
  int iterations = 0;
  double residual = 0.0;
};

struct Trajectory {
  double h = 0.0;
  std::size_t steps_taken = 0;
  //! Recorded states, starting with z0 at t = 0.
  std::vector<TrajectoryPoint> points;
  //! Iterations over all steps, recorded or not.
  long long total_iterations = 0;

  const PhaseState& final_state() const { return points.back().state; }
};

enum class FailureKind { non_convergence, singularity };

//! Integration aborted at `step`; carries the trajectory up to the last good state.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(FailureKind kind, std::size_t step, const std::string& what, Trajectory partial)
      : std::runtime_error(what), kind_(kind), step_(step), partial_(std::move(partial)) {}

  FailureKind kind() const { return kind_; }
  std::size_t step() const { return step_; }
  const Trajectory& partial() const { return partial_; }

 private:
  FailureKind kind_;
  std::size_t step_;
  Trajectory partial_;
};

/*!
 * Apply `method` n_steps times from z0. Every `stride`-th state is recorded,
 * plus the final one. Throws IntegrationError on solver non-convergence or a
 * field singularity, with the 1-based index of the failing step.
 */
Trajectory integrate(const ChargedParticleSystem& sys, const Method& method, const PhaseState& z0, double h,
                     std::size_t n_steps, const SolverOptions& opts = {}, std::size_t stride = 1);

}  // namespace dli

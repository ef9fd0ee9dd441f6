#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dli/diagnostics.hpp"
#include "dli/fields.hpp"
#include "dli/hamiltonian.hpp"
#include "dli/integrators.hpp"
#include "json.hpp"

namespace dli {

/*!
 * A step size or duration that remembers how it was written.
 *
 * Accepts products and quotients of numbers and `pi`, such as "pi/10",
 * "20*pi" or "-pi/1280", evaluated in long double. Serializes back to the
 * original text so configs round-trip unchanged.
 */
class TimeExpr {
 public:
  TimeExpr() = default;
  explicit TimeExpr(double value) : value_(value) {}
  //! Throws ConfigError on malformed text.
  static TimeExpr parse(const std::string& text);

  double value() const { return value_; }
  const std::string& text() const { return text_; }
  bool is_symbolic() const { return !text_.empty(); }
  std::string str() const;

  friend bool operator==(const TimeExpr& a, const TimeExpr& b) = default;

 private:
  double value_ = 0.0;
  std::string text_;
};

//! Field model name plus its numeric parameters.
struct FieldSpec {
  std::string name;
  nlohmann::json params = nlohmann::json::object();

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

//! Names accepted by make_field.
std::vector<std::string> field_model_names();

/*!
 * Build a field model. Recognized parameters (all optional):
 *   cylindrical_drift: coupling
 *   tokamak:           B0, R0, safety_factor
 *   uniform:           B [3], E [3]
 *   polynomial_well:   B [3], strength, power
 * Unknown names or parameters raise ConfigError.
 */
std::shared_ptr<const FieldModel> make_field(const FieldSpec& spec);

struct ConvergenceSpec {
  TimeExpr t_end = TimeExpr::parse("20*pi");
  std::vector<TimeExpr> steps = {TimeExpr::parse("pi/10"), TimeExpr::parse("pi/20"), TimeExpr::parse("pi/40"),
                                 TimeExpr::parse("pi/80")};
  TimeExpr reference = TimeExpr::parse("pi/1280");
  std::vector<std::string> methods = {"bdli", "boris", "rk4"};

  friend bool operator==(const ConvergenceSpec&, const ConvergenceSpec&) = default;
};

struct Scenario {
  std::string name;
  FieldSpec field;
  double mass = 1.0;
  double charge = 1.0;
  Vec3 position;
  Vec3 velocity;
  TimeExpr h;
  std::size_t steps = 0;
  //! "bdli", "dli:<rule>", "boris", "rk4", or "dli" to take `rule`.
  std::string method = "bdli";
  std::string rule = "boole";
  std::vector<std::pair<double, double>> custom_rule;
  SolverOptions solver;
  //! Output path prefix; empty means no files are written.
  std::string output;
  std::size_t stride = 1;
  bool relative_errors = false;
  ConvergenceSpec convergence;
  std::vector<std::string> compare_methods = {"bdli", "boris"};

  PhaseState initial_state() const { return {position, velocity}; }
  ChargedParticleSystem system() const;
  //! Method with "dli" expanded against `rule` and custom rules resolved.
  Method resolved_method() const;
  //! Throws ConfigError naming the offending field.
  void validate() const;
};

//! "drift2d", "banana", "transit".
std::vector<std::string> builtin_scenario_names();
Scenario builtin_scenario(const std::string& name);

nlohmann::json scenario_to_json(const Scenario& scn);
//! Starts from `builtin` when present, then applies every other key.
Scenario scenario_from_json(const nlohmann::json& doc);
//! Parse JSON config text; parse errors carry line and column.
Scenario parse_config(const std::string& text);
Scenario load_config(const std::filesystem::path& path);
//! A builtin name or a path to a JSON config.
Scenario resolve_scenario(const std::string& name_or_path);

struct QuantitySummary {
  double max_abs_err = 0.0;
  double final_abs_err = 0.0;
  std::optional<double> max_rel_err;
};

struct RunSummary {
  std::string scenario;
  std::string method;
  std::size_t steps = 0;
  double h = 0.0;
  std::map<std::string, std::optional<QuantitySummary>> quantities;
  double mean_iters = 0.0;
  double wall_time_s = 0.0;
  int failures = 0;
  std::string failure_message;

  //! Max absolute error of "H", "p_xi" or "mu"; nullopt if unavailable.
  std::optional<double> max_abs_err(const std::string& quantity) const;
};

//! Comma-separated series with one row per recorded state.
void write_series(std::ostream& os, const ChargedParticleSystem& sys, const Trajectory& traj,
                  bool relative_errors);
//! key=value lines with max_abs_err_H, max_abs_err_p_xi, max_abs_err_mu, mean_iters, failures, ...
void write_summary(std::ostream& os, const RunSummary& summary);
std::map<std::string, std::string> parse_summary(std::istream& is);

RunSummary summarize(const Scenario& scn, const ChargedParticleSystem& sys, const Trajectory& traj);

struct RunResult {
  RunSummary summary;
  Trajectory trajectory;
};

/*!
 * Integrate a validated scenario, write `<output>.csv` and
 * `<output>.summary.txt` when an output prefix is set, and return the
 * summary with the trajectory. Integration failures still write the partial
 * series before the IntegrationError propagates.
 */
RunResult run_scenario_full(const Scenario& scn);
RunSummary run_scenario(const Scenario& scn);

struct ConvergenceRow {
  std::string method;
  TimeExpr h;
  std::size_t steps = 0;
  double error = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  //! Least-squares slope of log(error) against log(h), per method.
  std::map<std::string, double> slopes;
};

//! Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/*!
 * Self-convergence: endpoint infinity-norm error at each h against a run of
 * the same method at the reference h, over spec.t_end. Every h must divide
 * t_end. Runs execute concurrently.
 */
ConvergenceTable convergence_study(const Scenario& scn, const ConvergenceSpec& spec);
void write_convergence(std::ostream& os, const ConvergenceTable& table);

struct ComparisonReport {
  std::vector<RunSummary> runs;
};

//! Runs each method on the same scenario; needs at least two methods.
ComparisonReport compare_methods(const Scenario& scn, const std::vector<std::string>& methods);
void write_comparison(std::ostream& os, const ComparisonReport& report);

}  // namespace dli

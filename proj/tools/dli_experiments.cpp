// Command-line driver for the charged-particle integration experiments.
//
//   dli_experiments run <config|builtin> [--method M] [--rule R] [--steps N]
//                   [--h EXPR] [--tol T] [--out PREFIX] [--relative-errors]
//   dli_experiments convergence <config|builtin> [...]
//   dli_experiments compare <config|builtin> [...]
//   dli_experiments list-builtins
//
// Exit codes: 0 success, 2 config error, 3 solver non-convergence,
// 4 field singularity.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dli/errors.hpp"
#include "dli/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitSingularity = 4;

struct Overrides {
  std::string target;
  std::optional<std::string> method;
  std::optional<std::string> rule;
  std::optional<std::size_t> steps;
  std::optional<std::string> h;
  std::optional<double> tol;
  std::optional<std::string> out;
  bool relative_errors = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("target", o.target, "config file or builtin scenario name")->required();
  cmd->add_option("--method", o.method, "bdli, dli:<rule>, boris or rk4");
  cmd->add_option("--rule", o.rule, "quadrature rule for the line-integral method");
  cmd->add_option("--steps", o.steps, "number of steps");
  cmd->add_option("--h", o.h, "step size, e.g. pi/10 or 0.05");
  cmd->add_option("--tol", o.tol, "fixed-point solver tolerance");
  cmd->add_option("--out", o.out, "output path prefix");
  cmd->add_flag("--relative-errors", o.relative_errors, "report relative instead of absolute errors");
}

dli::Scenario build_scenario(const Overrides& o) {
  dli::Scenario s = dli::resolve_scenario(o.target);
  if (o.method) s.method = *o.method;
  if (o.rule) {
    if (s.method == "boris" || s.method == "rk4")
      throw dli::ConfigError("--rule only applies to the line-integral method, not '" + s.method + "'");
    s.method = "dli";
    s.rule = *o.rule;
  }
  if (o.steps) s.steps = *o.steps;
  if (o.h) s.h = dli::TimeExpr::parse(*o.h);
  if (o.tol) s.solver.tolerance = *o.tol;
  if (o.out) s.output = *o.out;
  if (o.relative_errors) s.relative_errors = true;
  s.validate();
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-preserving integrators for charged particles in static fields"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);

  Overrides run_o, conv_o, cmp_o;
  auto* run = app.add_subcommand("run", "integrate one scenario and write its series");
  add_common(run, run_o);
  auto* conv = app.add_subcommand("convergence", "self-convergence study over a ladder of step sizes");
  add_common(conv, conv_o);
  auto* cmp = app.add_subcommand("compare", "run several methods on the same scenario");
  add_common(cmp, cmp_o);
  auto* list = app.add_subcommand("list-builtins", "print builtin scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*list) {
      for (const auto& name : dli::builtin_scenario_names()) std::cout << name << '\n';
      return 0;
    }
    if (*run) {
      const dli::Scenario s = build_scenario(run_o);
      dli::write_summary(std::cout, dli::run_scenario(s));
      return 0;
    }
    if (*conv) {
      const dli::Scenario s = build_scenario(conv_o);
      const auto table = dli::convergence_study(s, s.convergence);
      dli::write_convergence(std::cout, table);
      if (!s.output.empty()) {
        std::ofstream out(s.output + ".convergence.csv");
        dli::write_convergence(out, table);
      }
      return 0;
    }
    if (*cmp) {
      const dli::Scenario s = build_scenario(cmp_o);
      dli::write_comparison(std::cout, dli::compare_methods(s, s.compare_methods));
      return 0;
    }
  } catch (const dli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const dli::IntegrationError& e) {
    std::cerr << "integration failed: " << e.what() << '\n';
    return e.kind() == dli::FailureKind::non_convergence ? kExitNonConvergence : kExitSingularity;
  } catch (const dli::SingularityError& e) {
    std::cerr << "field singularity: " << e.what() << '\n';
    return kExitSingularity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

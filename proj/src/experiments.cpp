#include "dli/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <numbers>
#include <set>
#include <sstream>

#include "dli/errors.hpp"

namespace dli {

using nlohmann::json;

// ---------------------------------------------------------------------------
// TimeExpr

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TimeExpr TimeExpr::parse(const std::string& text) {
  const std::string body = trim(text);
  if (body.empty()) throw ConfigError("empty time expression");

  std::size_t pos = 0;
  long double sign = 1.0L;
  if (body[0] == '-' || body[0] == '+') {
    sign = body[0] == '-' ? -1.0L : 1.0L;
    pos = 1;
  }
  long double value = 1.0L;
  char op = '*';
  while (true) {
    const std::size_t next = body.find_first_of("*/", pos);
    const std::string token = trim(body.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    long double factor = 0.0L;
    if (token == "pi") {
      factor = std::numbers::pi_v<long double>;
    } else {
      char* end = nullptr;
      factor = std::strtold(token.c_str(), &end);
      if (token.empty() || end != token.c_str() + token.size() || !std::isfinite(static_cast<double>(factor)))
        throw ConfigError("malformed time expression '" + text + "'");
    }
    if (op == '*') {
      value *= factor;
    } else {
      if (factor == 0.0L) throw ConfigError("division by zero in time expression '" + text + "'");
      value /= factor;
    }
    if (next == std::string::npos) break;
    op = body[next];
    pos = next + 1;
  }
  TimeExpr t;
  t.value_ = static_cast<double>(sign * value);
  t.text_ = body;
  return t;
}

std::string TimeExpr::str() const { return is_symbolic() ? text_ : format_double(value_); }

// ---------------------------------------------------------------------------
// JSON helpers

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError("field '" + field + "': expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError("field '" + field + "': must be finite");
  return d;
}

Vec3 get_vec3(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 3) throw ConfigError("field '" + field + "': expected an array of 3 numbers");
  return {get_number(v[0], field), get_number(v[1], field), get_number(v[2], field)};
}

json vec3_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

TimeExpr get_time(const json& v, const std::string& field) {
  if (v.is_string()) {
    try {
      return TimeExpr::parse(v.get<std::string>());
    } catch (const ConfigError& e) {
      throw ConfigError("field '" + field + "': " + e.what());
    }
  }
  return TimeExpr(get_number(v, field));
}

json time_json(const TimeExpr& t) { return t.is_symbolic() ? json(t.text()) : json(t.value()); }

std::size_t get_count(const json& v, const std::string& field, std::size_t min) {
  if (!v.is_number_integer() && !(v.is_number() && std::floor(v.get<double>()) == v.get<double>()))
    throw ConfigError("field '" + field + "': expected an integer");
  const double d = v.get<double>();
  if (d < static_cast<double>(min))
    throw ConfigError("field '" + field + "': must be >= " + std::to_string(min));
  return static_cast<std::size_t>(d);
}

std::string get_string(const json& v, const std::string& field) {
  if (!v.is_string()) throw ConfigError("field '" + field + "': expected a string");
  return v.get<std::string>();
}

std::vector<std::string> get_strings(const json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError("field '" + field + "': expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(get_string(e, field));
  return out;
}

std::string predictor_name(Predictor p) { return p == Predictor::frozen ? "frozen" : "explicit-euler"; }

}  // namespace

// ---------------------------------------------------------------------------
// Fields

std::vector<std::string> field_model_names() { return {"cylindrical_drift", "tokamak", "uniform", "polynomial_well"}; }

std::shared_ptr<const FieldModel> make_field(const FieldSpec& spec) {
  const json& p = spec.params;
  if (!p.is_object()) throw ConfigError("field parameters must be an object");
  const std::string where = "field '" + spec.name + "'";
  auto num = [&](const char* key, double fallback) {
    return p.contains(key) ? get_number(p.at(key), std::string("field.") + key) : fallback;
  };
  auto vec = [&](const char* key, Vec3 fallback) {
    return p.contains(key) ? get_vec3(p.at(key), std::string("field.") + key) : fallback;
  };

  if (spec.name == "cylindrical_drift") {
    reject_unknown(p, {"coupling"}, where);
    return std::make_shared<CylindricalDriftField>(num("coupling", 1e-2));
  }
  if (spec.name == "tokamak") {
    reject_unknown(p, {"B0", "R0", "safety_factor"}, where);
    const double q = num("safety_factor", 2.0);
    if (q == 0.0) throw ConfigError("field 'field.safety_factor': must be nonzero");
    return std::make_shared<TokamakField>(num("B0", 1.0), num("R0", 1.0), q);
  }
  if (spec.name == "uniform") {
    reject_unknown(p, {"B", "E"}, where);
    return std::make_shared<UniformField>(vec("B", {0.0, 0.0, 1.0}), vec("E", {}));
  }
  if (spec.name == "polynomial_well") {
    reject_unknown(p, {"B", "strength", "power"}, where);
    const double power = num("power", 2.0);
    if (power < 1.0 || std::floor(power) != power)
      throw ConfigError("field 'field.power': must be an integer >= 1");
    return std::make_shared<PolynomialWellField>(vec("B", {0.0, 0.0, 1.0}), num("strength", 1.0),
                                                 static_cast<int>(power));
  }
  throw ConfigError("field 'field.name': unknown field model '" + spec.name +
                    "' (expected cylindrical_drift, tokamak, uniform or polynomial_well)");
}

// ---------------------------------------------------------------------------
// Scenario

ChargedParticleSystem Scenario::system() const { return {mass, charge, make_field(field)}; }

Method Scenario::resolved_method() const {
  std::optional<QuadratureRule> custom;
  if (!custom_rule.empty()) custom = QuadratureRule::custom("custom", custom_rule);
  return parse_method(method == "dli" ? "dli:" + rule : method, custom);
}

void Scenario::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw ConfigError("field 'mass': must be positive");
  if (!std::isfinite(charge)) throw ConfigError("field 'charge': must be finite");
  if (!is_finite(position)) throw ConfigError("field 'position': must be finite");
  if (!is_finite(velocity)) throw ConfigError("field 'velocity': must be finite");
  if (!std::isfinite(h.value()) || h.value() == 0.0) throw ConfigError("field 'h': must be finite and nonzero");
  if (steps < 1) throw ConfigError("field 'steps': must be >= 1");
  if (stride < 1) throw ConfigError("field 'stride': must be >= 1");
  if (!(solver.tolerance > 0.0)) throw ConfigError("field 'solver.tolerance': must be positive");
  if (solver.max_iterations < 1) throw ConfigError("field 'solver.max_iterations': must be >= 1");
  make_field(field);
  try {
    resolved_method();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("field 'method': ") + e.what());
  }
}

std::vector<std::string> builtin_scenario_names() { return {"drift2d", "banana", "transit"}; }

Scenario builtin_scenario(const std::string& name) {
  Scenario s;
  s.name = name;
  s.h = TimeExpr::parse("pi/10");
  s.steps = 50000;
  if (name == "drift2d") {
    s.field = {"cylindrical_drift", {{"coupling", 1e-2}}};
    s.position = {0.0, 0.1, 0.0};
    s.velocity = {0.1, 0.01, 0.0};
    return s;
  }
  if (name == "banana" || name == "transit") {
    s.field = {"tokamak", {{"B0", 1.0}, {"R0", 1.0}, {"safety_factor", 2.0}}};
    s.position = {1.05, 0.0, 0.0};
    s.velocity = {0.0, 4.816e-4, 2.059e-3};
    if (name == "transit") s.velocity.y = 2.0 * 4.816e-4;
    return s;
  }
  throw ConfigError("unknown builtin scenario '" + name + "' (expected drift2d, banana or transit)");
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["field"] = s.field.params;
  j["field"]["name"] = s.field.name;
  j["mass"] = s.mass;
  j["charge"] = s.charge;
  j["position"] = vec3_json(s.position);
  j["velocity"] = vec3_json(s.velocity);
  j["h"] = time_json(s.h);
  j["steps"] = s.steps;
  j["method"] = s.method;
  j["rule"] = s.rule;
  if (!s.custom_rule.empty()) {
    json pairs = json::array();
    for (const auto& [c, w] : s.custom_rule) pairs.push_back(json::array({c, w}));
    j["custom_rule"] = pairs;
  }
  j["solver"] = {{"tolerance", s.solver.tolerance},
                 {"max_iterations", s.solver.max_iterations},
                 {"predictor", predictor_name(s.solver.predictor)}};
  j["output"] = s.output;
  j["stride"] = s.stride;
  j["relative_errors"] = s.relative_errors;
  json steps = json::array();
  for (const auto& h : s.convergence.steps) steps.push_back(time_json(h));
  j["convergence"] = {{"t_end", time_json(s.convergence.t_end)},
                      {"h", steps},
                      {"reference_h", time_json(s.convergence.reference)},
                      {"methods", s.convergence.methods}};
  j["compare"] = {{"methods", s.compare_methods}};
  return j;
}

Scenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(doc,
                 {"builtin", "name", "field", "mass", "charge", "position", "velocity", "h", "steps", "method", "rule",
                  "custom_rule", "solver", "output", "stride", "relative_errors", "convergence", "compare"},
                 "config");

  Scenario s;
  if (doc.contains("builtin")) s = builtin_scenario(get_string(doc.at("builtin"), "builtin"));

  if (doc.contains("name")) s.name = get_string(doc.at("name"), "name");
  if (doc.contains("field")) {
    const json& f = doc.at("field");
    if (!f.is_object() || !f.contains("name")) throw ConfigError("field 'field': expected an object with a name");
    s.field.name = get_string(f.at("name"), "field.name");
    s.field.params = f;
    s.field.params.erase("name");
  }
  if (doc.contains("mass")) s.mass = get_number(doc.at("mass"), "mass");
  if (doc.contains("charge")) s.charge = get_number(doc.at("charge"), "charge");
  if (doc.contains("position")) s.position = get_vec3(doc.at("position"), "position");
  if (doc.contains("velocity")) s.velocity = get_vec3(doc.at("velocity"), "velocity");
  if (doc.contains("h")) s.h = get_time(doc.at("h"), "h");
  if (doc.contains("steps")) s.steps = get_count(doc.at("steps"), "steps", 0);
  if (doc.contains("method")) s.method = get_string(doc.at("method"), "method");
  if (doc.contains("rule")) s.rule = get_string(doc.at("rule"), "rule");
  if (doc.contains("custom_rule")) {
    const json& r = doc.at("custom_rule");
    if (!r.is_array()) throw ConfigError("field 'custom_rule': expected an array of [node, weight] pairs");
    s.custom_rule.clear();
    for (const auto& pair : r) {
      if (!pair.is_array() || pair.size() != 2)
        throw ConfigError("field 'custom_rule': expected an array of [node, weight] pairs");
      s.custom_rule.emplace_back(get_number(pair[0], "custom_rule"), get_number(pair[1], "custom_rule"));
    }
  }
  if (doc.contains("solver")) {
    const json& o = doc.at("solver");
    if (!o.is_object()) throw ConfigError("field 'solver': expected an object");
    reject_unknown(o, {"tolerance", "max_iterations", "predictor"}, "solver");
    if (o.contains("tolerance")) s.solver.tolerance = get_number(o.at("tolerance"), "solver.tolerance");
    if (o.contains("max_iterations"))
      s.solver.max_iterations = static_cast<int>(get_count(o.at("max_iterations"), "solver.max_iterations", 1));
    if (o.contains("predictor")) {
      const std::string p = get_string(o.at("predictor"), "solver.predictor");
      if (p == "frozen")
        s.solver.predictor = Predictor::frozen;
      else if (p == "explicit-euler")
        s.solver.predictor = Predictor::explicit_euler;
      else
        throw ConfigError("field 'solver.predictor': expected frozen or explicit-euler");
    }
  }
  if (doc.contains("output")) s.output = get_string(doc.at("output"), "output");
  if (doc.contains("stride")) s.stride = get_count(doc.at("stride"), "stride", 1);
  if (doc.contains("relative_errors")) {
    if (!doc.at("relative_errors").is_boolean()) throw ConfigError("field 'relative_errors': expected a boolean");
    s.relative_errors = doc.at("relative_errors").get<bool>();
  }
  if (doc.contains("convergence")) {
    const json& c = doc.at("convergence");
    if (!c.is_object()) throw ConfigError("field 'convergence': expected an object");
    reject_unknown(c, {"t_end", "h", "reference_h", "methods"}, "convergence");
    if (c.contains("t_end")) s.convergence.t_end = get_time(c.at("t_end"), "convergence.t_end");
    if (c.contains("h")) {
      if (!c.at("h").is_array()) throw ConfigError("field 'convergence.h': expected an array");
      s.convergence.steps.clear();
      for (const auto& h : c.at("h")) s.convergence.steps.push_back(get_time(h, "convergence.h"));
    }
    if (c.contains("reference_h")) s.convergence.reference = get_time(c.at("reference_h"), "convergence.reference_h");
    if (c.contains("methods")) s.convergence.methods = get_strings(c.at("methods"), "convergence.methods");
  }
  if (doc.contains("compare")) {
    const json& c = doc.at("compare");
    if (!c.is_object()) throw ConfigError("field 'compare': expected an object");
    reject_unknown(c, {"methods"}, "compare");
    if (c.contains("methods")) s.compare_methods = get_strings(c.at("methods"), "compare.methods");
  }
  s.validate();
  return s;
}

Scenario parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return scenario_from_json(doc);
}

Scenario load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Scenario resolve_scenario(const std::string& name_or_path) {
  for (const auto& b : builtin_scenario_names())
    if (b == name_or_path) return builtin_scenario(b);
  return load_config(name_or_path);
}

// ---------------------------------------------------------------------------
// Output

std::optional<double> RunSummary::max_abs_err(const std::string& quantity) const {
  const auto it = quantities.find(quantity);
  if (it == quantities.end() || !it->second) return std::nullopt;
  return it->second->max_abs_err;
}

namespace {

constexpr Quantity kQuantities[] = {Quantity::energy, Quantity::toroidal_momentum, Quantity::magnetic_moment};

std::optional<std::vector<ErrorSample>> optional_series(const ChargedParticleSystem& sys, const Trajectory& traj,
                                                        Quantity q, bool relative) {
  if (traj.points.empty() || !try_evaluate(sys, q, traj.points.front().state)) return std::nullopt;
  return error_series(sys, traj, q, relative);
}

}  // namespace

void write_series(std::ostream& os, const ChargedParticleSystem& sys, const Trajectory& traj,
                  bool relative_errors) {
  const auto records = diagnostic_records(sys, traj);
  std::vector<std::optional<std::vector<ErrorSample>>> errs;
  for (Quantity q : kQuantities) errs.push_back(optional_series(sys, traj, q, relative_errors));

  os << "t,x,y,z,vx,vy,vz,H,p_xi,mu,err_H,err_p_xi,err_mu,iters\n";
  auto fmt = [](std::optional<double> v) { return v ? format_double(*v) : std::string("nan"); };
  for (std::size_t i = 0; i < traj.points.size(); ++i) {
    const auto& p = traj.points[i];
    const auto& r = records[i];
    os << format_double(p.time) << ',' << format_double(p.state.x.x) << ',' << format_double(p.state.x.y) << ','
       << format_double(p.state.x.z) << ',' << format_double(p.state.v.x) << ',' << format_double(p.state.v.y) << ','
       << format_double(p.state.v.z) << ',' << format_double(r.energy) << ',' << fmt(r.p_xi) << ',' << fmt(r.mu);
    for (const auto& e : errs) os << ',' << (e ? format_double((*e)[i].error) : std::string("nan"));
    os << ',' << p.iterations << '\n';
  }
}

void write_summary(std::ostream& os, const RunSummary& s) {
  os << "scenario=" << s.scenario << '\n';
  os << "method=" << s.method << '\n';
  os << "steps=" << s.steps << '\n';
  os << "h=" << format_double(s.h) << '\n';
  for (Quantity q : kQuantities) {
    const std::string name(quantity_name(q));
    const auto it = s.quantities.find(name);
    const bool have = it != s.quantities.end() && it->second.has_value();
    os << "max_abs_err_" << name << '=' << (have ? format_double(it->second->max_abs_err) : "nan") << '\n';
    os << "final_abs_err_" << name << '=' << (have ? format_double(it->second->final_abs_err) : "nan") << '\n';
    if (have && it->second->max_rel_err)
      os << "max_rel_err_" << name << '=' << format_double(*it->second->max_rel_err) << '\n';
  }
  os << "mean_iters=" << format_double(s.mean_iters) << '\n';
  os << "wall_time_s=" << format_double(s.wall_time_s) << '\n';
  os << "failures=" << s.failures << '\n';
  if (!s.failure_message.empty()) os << "failure=" << s.failure_message << '\n';
}

std::map<std::string, std::string> parse_summary(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

RunSummary summarize(const Scenario& scn, const ChargedParticleSystem& sys, const Trajectory& traj) {
  RunSummary s;
  s.scenario = scn.name;
  s.method = scn.resolved_method().label();
  s.steps = traj.steps_taken;
  s.h = traj.h;
  for (Quantity q : kQuantities) {
    const std::string name(quantity_name(q));
    const auto abs_series = optional_series(sys, traj, q, false);
    if (!abs_series) {
      s.quantities[name] = std::nullopt;
      continue;
    }
    QuantitySummary qs;
    qs.max_abs_err = max_abs_error(*abs_series);
    qs.final_abs_err = std::abs(abs_series->back().error);
    if (scn.relative_errors) qs.max_rel_err = max_abs_error(error_series(sys, traj, q, true));
    s.quantities[name] = qs;
  }
  s.mean_iters = traj.steps_taken ? static_cast<double>(traj.total_iterations) / traj.steps_taken : 0.0;
  return s;
}

namespace {

void write_outputs(const Scenario& scn, const ChargedParticleSystem& sys, const Trajectory& traj,
                   const RunSummary& summary) {
  if (scn.output.empty()) return;
  const std::filesystem::path base(scn.output);
  if (base.has_parent_path()) std::filesystem::create_directories(base.parent_path());
  std::ofstream series(scn.output + ".csv");
  write_series(series, sys, traj, scn.relative_errors);
  std::ofstream summ(scn.output + ".summary.txt");
  write_summary(summ, summary);
  if (!series || !summ) throw std::runtime_error("failed writing output '" + scn.output + "'");
}

}  // namespace

RunResult run_scenario_full(const Scenario& scn) {
  scn.validate();
  const ChargedParticleSystem sys = scn.system();
  const Method method = scn.resolved_method();
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  try {
    Trajectory traj = integrate(sys, method, scn.initial_state(), scn.h.value(), scn.steps, scn.solver, scn.stride);
    RunSummary summary = summarize(scn, sys, traj);
    summary.wall_time_s = elapsed();
    write_outputs(scn, sys, traj, summary);
    return {std::move(summary), std::move(traj)};
  } catch (const IntegrationError& e) {
    RunSummary summary = summarize(scn, sys, e.partial());
    summary.wall_time_s = elapsed();
    summary.failures = 1;
    summary.failure_message = e.what();
    write_outputs(scn, sys, e.partial(), summary);
    throw;
  }
}

RunSummary run_scenario(const Scenario& scn) { return run_scenario_full(scn).summary; }

// ---------------------------------------------------------------------------
// Studies

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope needs >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

std::size_t steps_for(const TimeExpr& h, const TimeExpr& t_end) {
  const double ratio = t_end.value() / h.value();
  const double n = std::round(ratio);
  if (!(n >= 1.0) || std::abs(n - ratio) > 1e-9 * std::max(1.0, std::abs(ratio)))
    throw ConfigError("field 'convergence.h': step " + h.str() + " does not divide t_end " + t_end.str());
  return static_cast<std::size_t>(n);
}

}  // namespace

ConvergenceTable convergence_study(const Scenario& scn, const ConvergenceSpec& spec) {
  scn.validate();
  if (spec.steps.size() < 2) throw ConfigError("field 'convergence.h': need at least two step sizes");
  for (const auto& h : spec.steps)
    if (std::abs(spec.reference.value()) >= std::abs(h.value()))
      throw ConfigError("field 'convergence.reference_h': must be finer than every h");
  const ChargedParticleSystem sys = scn.system();
  const PhaseState z0 = scn.initial_state();
  std::optional<QuadratureRule> custom;
  if (!scn.custom_rule.empty()) custom = QuadratureRule::custom("custom", scn.custom_rule);

  struct Job {
    std::string method;
    TimeExpr h;
    std::size_t steps;
    std::future<PhaseState> result;
  };
  auto launch = [&](const Method& m, const TimeExpr& h, std::size_t n) {
    return std::async(std::launch::async, [&sys, m, z0, h, n, opts = scn.solver] {
      return integrate(sys, m, z0, h.value(), n, opts, n).final_state();
    });
  };

  std::vector<Job> refs;
  std::vector<Job> jobs;
  for (const auto& name : spec.methods) {
    const Method m = parse_method(name, custom);
    const std::size_t n_ref = steps_for(spec.reference, spec.t_end);
    refs.push_back({name, spec.reference, n_ref, launch(m, spec.reference, n_ref)});
    for (const auto& h : spec.steps) {
      const std::size_t n = steps_for(h, spec.t_end);
      jobs.push_back({name, h, n, launch(m, h, n)});
    }
  }

  std::map<std::string, PhaseState> reference;
  for (auto& r : refs) reference[r.method] = r.result.get();

  ConvergenceTable table;
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> fit;
  for (auto& j : jobs) {
    const PhaseState end = j.result.get();
    const PhaseState& ref = reference.at(j.method);
    const double err = std::max(norm_inf(end.x - ref.x), norm_inf(end.v - ref.v));
    table.rows.push_back({j.method, j.h, j.steps, err});
    fit[j.method].first.push_back(std::abs(j.h.value()));
    fit[j.method].second.push_back(err);
  }
  for (const auto& [name, xy] : fit) table.slopes[name] = loglog_slope(xy.first, xy.second);
  return table;
}

void write_convergence(std::ostream& os, const ConvergenceTable& table) {
  os << "method,h,steps,error\n";
  for (const auto& r : table.rows)
    os << r.method << ',' << r.h.str() << ',' << r.steps << ',' << format_double(r.error) << '\n';
  for (const auto& [name, slope] : table.slopes) os << "# slope " << name << '=' << format_double(slope) << '\n';
}

ComparisonReport compare_methods(const Scenario& scn, const std::vector<std::string>& methods) {
  if (methods.size() < 2) throw ConfigError("field 'compare.methods': need at least two methods");
  std::vector<std::future<RunSummary>> runs;
  for (const auto& m : methods) {
    Scenario copy = scn;
    copy.method = m;
    if (!scn.output.empty()) {
      std::string tag = m;
      for (char& c : tag)
        if (c == ':') c = '_';
      copy.output = scn.output + "." + tag;
    }
    copy.validate();
    runs.push_back(std::async(std::launch::async, [copy] { return run_scenario(copy); }));
  }
  ComparisonReport report;
  for (auto& r : runs) report.runs.push_back(r.get());
  if (!scn.output.empty()) {
    std::ofstream out(scn.output + ".compare.txt");
    write_comparison(out, report);
  }
  return report;
}

void write_comparison(std::ostream& os, const ComparisonReport& report) {
  os << "method,max_abs_err_H,max_abs_err_p_xi,max_abs_err_mu,mean_iters,failures\n";
  auto fmt = [](std::optional<double> v) { return v ? format_double(*v) : std::string("nan"); };
  for (const auto& r : report.runs)
    os << r.method << ',' << fmt(r.max_abs_err("H")) << ',' << fmt(r.max_abs_err("p_xi")) << ','
       << fmt(r.max_abs_err("mu")) << ',' << format_double(r.mean_iters) << ',' << r.failures << '\n';
}

}  // namespace dli

#include "dli/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "dli/errors.hpp"

namespace dli {

QuadratureRule QuadratureRule::builtin(std::string_view name) {
  if (name == "trapezoid") return {"trapezoid", {0.0, 1.0}, {0.5, 0.5}, 1};
  if (name == "simpson") return {"simpson", {0.0, 0.5, 1.0}, {1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0}, 3};
  if (name == "boole")
    return {"boole",
            {0.0, 0.25, 0.5, 0.75, 1.0},
            {7.0 / 90.0, 32.0 / 90.0, 12.0 / 90.0, 32.0 / 90.0, 7.0 / 90.0},
            5};
  throw ConfigError("unknown quadrature rule '" + std::string(name) +
                    "' (expected trapezoid, simpson or boole)");
}

QuadratureRule QuadratureRule::custom(std::string name,
                                      const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.empty()) throw ConfigError("quadrature rule '" + name + "' has no nodes");
  std::vector<double> nodes;
  std::vector<double> weights;
  double sum = 0.0;
  for (const auto& [c, w] : pairs) {
    if (!std::isfinite(c) || !std::isfinite(w))
      throw ConfigError("quadrature rule '" + name + "' has a non-finite node or weight");
    if (c < 0.0 || c > 1.0)
      throw ConfigError("quadrature rule '" + name + "' has a node outside [0, 1]");
    if (!nodes.empty() && !(c > nodes.back()))
      throw ConfigError("quadrature rule '" + name + "' nodes must be strictly ascending");
    nodes.push_back(c);
    weights.push_back(w);
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-15) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "quadrature rule '" << name << "' weights sum to " << sum << ", expected 1";
    throw ConfigError(msg.str());
  }
  const int degree = measured_exactness(nodes, weights);
  if (degree < 1)
    throw ConfigError("quadrature rule '" + name + "' must integrate linear functions exactly");
  return {std::move(name), std::move(nodes), std::move(weights), degree};
}

bool QuadratureRule::is_symmetric() const {
  const std::size_t n = nodes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(nodes_[i] + nodes_[n - 1 - i] - 1.0) > 1e-15) return false;
    if (weights_[i] != weights_[n - 1 - i]) return false;
  }
  return true;
}

std::vector<std::string> builtin_rule_names() { return {"trapezoid", "simpson", "boole"}; }

int measured_exactness(const std::vector<double>& nodes, const std::vector<double>& weights,
                       int max_degree, double tol) {
  int degree = -1;
  for (int k = 0; k <= max_degree; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * std::pow(nodes[i], k);
    if (std::abs(s - 1.0 / (k + 1)) > tol) break;
    degree = k;
  }
  return degree;
}

PhaseVec weighted_gradient(const ChargedParticleSystem& sys, const QuadratureRule& rule,
                           const PhaseState& z0, const PhaseState& z1) {
  const auto& c = rule.nodes();
  const auto& w = rule.weights();
  Vec3 gx, gv;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const PhaseVec g = grad_energy(sys, lerp(z0, z1, c[i]));
    gx += w[i] * g.position_block();
    gv += w[i] * g.velocity_block();
  }
  return {gx, gv};
}

}  // namespace dli

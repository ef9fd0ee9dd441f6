#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dli/hamiltonian.hpp"

namespace dli {

/*!
 * Quadrature rule on [0, 1].
 *
 * Nodes are ascending in [0, 1], weights sum to one, and the rule is exact
 * for polynomials up to degree_of_exactness(). Every rule is at least exact
 * for linears, which the line-integral step relies on.
 */
class QuadratureRule {
 public:
  //! Built-in closed Newton-Cotes rules: "trapezoid", "simpson", "boole".
  static QuadratureRule builtin(std::string_view name);

  /*!
   * Validated user rule from (node, weight) pairs. The degree of exactness is
   * measured on monomials. Throws ConfigError if the pairs violate the rule
   * invariants or the rule is not exact for linears.
   */
  static QuadratureRule custom(std::string name, const std::vector<std::pair<double, double>>& pairs);

  const std::string& name() const { return name_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  int degree_of_exactness() const { return degree_; }
  std::size_t size() const { return nodes_.size(); }

  //! Nodes mirror about 1/2 and weights are palindromic.
  bool is_symmetric() const;

  template <class F>
  auto apply(F&& f) const {
    auto acc = weights_[0] * f(nodes_[0]);
    for (std::size_t i = 1; i < nodes_.size(); ++i) acc += weights_[i] * f(nodes_[i]);
    return acc;
  }

 private:
  QuadratureRule(std::string name, std::vector<double> nodes, std::vector<double> weights, int degree)
      : name_(std::move(name)), nodes_(std::move(nodes)), weights_(std::move(weights)), degree_(degree) {}

  std::string name_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  int degree_;
};

std::vector<std::string> builtin_rule_names();

//! Largest k <= max_degree with |sum w c^k - 1/(k+1)| <= tol for all j <= k; -1 if none.
int measured_exactness(const std::vector<double>& nodes, const std::vector<double>& weights,
                       int max_degree = 32, double tol = 1e-14);

//! sum_i w_i grad H((1 - c_i) z0 + c_i z1).
PhaseVec weighted_gradient(const ChargedParticleSystem& sys, const QuadratureRule& rule,
                           const PhaseState& z0, const PhaseState& z1);

}  // namespace dli

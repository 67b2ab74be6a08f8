#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpheat {

/// Raised when the tridiagonal eigen-solver fails to converge on a node.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, int node_index)
      : std::runtime_error(what), node_index_(node_index) {}
  [[nodiscard]] int node_index() const { return node_index_; }

 private:
  int node_index_;
};

/// Gauss rule on [0,1] for the weight (1-u)^a u^b.
struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, inside (0,1)
  std::vector<double> weights;  // positive
  double a = 0.0;
  double b = 0.0;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
  [[nodiscard]] double total_weight() const;
};

/// Product rule on the 2-simplex for the weight s_2(u) = (1-u1-u2)^{N-3}.
struct SimplexRule2 {
  std::vector<std::array<double, 2>> nodes;
  std::vector<double> weights;
  int N = 3;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
  [[nodiscard]] double total_weight() const;
};

/// m-point Gauss-Jacobi rule, exact to degree 2m-1 against (1-u)^a u^b.
QuadratureRule gauss_jacobi_rule(int m, double a, double b);

/// Convenience: m-point Gauss-Legendre rule mapped to [lo, hi].
QuadratureRule gauss_legendre_rule(int m, double lo, double hi);

/// Conical product rule on the 2-simplex, exact for total degree <= 2m-2
/// against s_2. Requires N >= 3.
SimplexRule2 simplex_rule_2(int m, int N);

/// Beta function B(x, y).
double beta_function(double x, double y);

/// Sum of w_i f(node_i). Throws std::domain_error on a non-finite value.
template <class F>
double integrate(const QuadratureRule& rule, F&& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = f(rule.nodes[i]);
    if (!std::isfinite(v)) {
      throw std::domain_error("integrate: integrand not finite at node " +
                              std::to_string(i));
    }
    sum += rule.weights[i] * v;
  }
  return sum;
}

template <class F>
double integrate(const SimplexRule2& rule, F&& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = f(rule.nodes[i][0], rule.nodes[i][1]);
    if (!std::isfinite(v)) {
      throw std::domain_error("integrate: integrand not finite at node " +
                              std::to_string(i));
    }
    sum += rule.weights[i] * v;
  }
  return sum;
}

}  // namespace cpheat

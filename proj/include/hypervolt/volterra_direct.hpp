#ifndef HYPERVOLT_VOLTERRA_DIRECT_HPP
#define HYPERVOLT_VOLTERRA_DIRECT_HPP

#include <string>
#include <vector>

#include "hypervolt/profile.hpp"
#include "hypervolt/solution.hpp"

namespace hypervolt {

enum class ProductRule { product_rectangle, product_trapezoid };

std::string to_string(ProductRule r);

struct StepperConfig {
  double step = 1e-3;
  double horizon = 1.0;
  ProductRule rule = ProductRule::product_trapezoid;

  /// Requires step > 0, step <= horizon / 8 and horizon / step <= 1e7.
  void validate() const;
  /// Number of steps, round(horizon / step).
  long steps() const;
};

/// Product-integration weights w_{n,j}, j = 0..n, for t_n = n h: the exact
/// integral of (t_n - s)^(lambda - 1) against the rule's basis function at
/// t_j.  The rectangle rule uses right-endpoint values on each cell.
std::vector<double> product_weights(double lambda, double h, long n, ProductRule rule);

/// March v_n = v0(t_n) + sum_j w_{n,j} v_j for t_n = n h, n = 1..steps.
/// lambda must lie in (0, 1].
SolutionGrid solve_product_integration(const SourceProfile& profile, double lambda,
                                       const StepperConfig& cfg);

/// Values at arbitrary times: runs step h and h/2, interpolates both
/// linearly and reports the h/2 values with |v_h - v_{h/2}| as estimate.
/// The horizon is raised to the last requested time when needed.
SolutionGrid solve_direct_at(const SourceProfile& profile, double lambda,
                             const std::vector<double>& times, const StepperConfig& cfg);

}  // namespace hypervolt

#endif  // HYPERVOLT_VOLTERRA_DIRECT_HPP

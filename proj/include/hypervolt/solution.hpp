#ifndef HYPERVOLT_SOLUTION_HPP
#define HYPERVOLT_SOLUTION_HPP

#include <string>
#include <vector>

namespace hypervolt {

enum class Route { inversion, resolvent, direct };

std::string to_string(Route r);
Route parse_route(const std::string& s);

/// Sampled solution v(t_i) with provenance.
struct SolutionGrid {
  std::vector<double> times;   // strictly increasing, all > 0
  std::vector<double> values;  // finite
  Route route = Route::inversion;
  std::string method;          // configuration summary
  std::vector<double> error_estimates;  // empty, or one per time

  /// Throws DomainError when an invariant is broken, OverflowError for
  /// non-finite values.
  void validate() const;
};

/// Throws DomainError unless `times` is non-empty, positive and strictly
/// increasing.
void require_time_grid(const std::vector<double>& times);

}  // namespace hypervolt

#endif  // HYPERVOLT_SOLUTION_HPP

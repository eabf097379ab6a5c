#ifndef HYPERVOLT_ASYMPTOTICS_HPP
#define HYPERVOLT_ASYMPTOTICS_HPP

#include <string>

#include "hypervolt/profile.hpp"
#include "hypervolt/solution.hpp"

namespace hypervolt {

/// t -> 0 pairs with p -> inf; t -> inf pairs with p -> 0.
enum class AsymptoticRegime { small_t, large_t };

std::string to_string(AsymptoticRegime r);

/// c p^power on the Laplace side, or A t^power on the time side.
struct PowerLaw {
  double coefficient;
  double power;
};

/// f(t) ~ A t^nu  <=>  L(f)(p) ~ A Gamma(nu + 1) p^(-nu - 1).  The same
/// formula holds in both regimes.  Throws DomainError for nu = -1, -2, ...
PowerLaw tauberian_map(double amplitude, double nu, AsymptoticRegime regime);

/// Inverse of tauberian_map: (c / Gamma(-power), -power - 1).
PowerLaw tauberian_inverse(double coefficient, double power, AsymptoticRegime regime);

struct PowerLawFit {
  double amplitude;
  double exponent;
  double t_min;
  double t_max;
  double rms_log_residual;
  int samples;
};

/// Least-squares fit of log|v| against log t over the samples with
/// t in [t_min, t_max].  Needs at least 6 samples, all of one sign.
PowerLawFit estimate_power_law(const SolutionGrid& grid, double t_min, double t_max);

/// Leading large-t power law of v for lambda in (-1, 0):
/// L(v) = M0 + M0 Gamma(lambda) p^(-lambda) + ..., whose non-analytic term
/// maps to M0 t^(lambda - 1).  Requires exponential or faster decay of v0.
PowerLaw tail_prediction(const SourceProfile& profile, double lambda = -0.25);

/// Leading small-t power law of v for lambda in (-1, 0):
/// L(v) ~ v0(0) p^(lambda - 1) / (-Gamma(lambda)), i.e.
/// v ~ v0(0) t^(-lambda) / (-Gamma(lambda) Gamma(1 - lambda)).
/// The coefficient is zero when v0(0) = 0.
PowerLaw head_prediction(const SourceProfile& profile, double lambda = -0.25);

/// Default fit windows.
inline constexpr double kSmallWindowMin = 1e-4;
inline constexpr double kSmallWindowMax = 1e-2;
inline constexpr double kLargeWindowMin = 1e3;
inline constexpr double kLargeWindowMax = 1e5;

}  // namespace hypervolt

#endif  // HYPERVOLT_ASYMPTOTICS_HPP

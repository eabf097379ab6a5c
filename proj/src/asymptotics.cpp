#include "hypervolt/asymptotics.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "hypervolt/error.hpp"
#include "hypervolt/kernel.hpp"
#include "hypervolt/special.hpp"

namespace hypervolt {

namespace {

void require_hypersingular(double lambda) {
  require_admissible_exponent(lambda);
  if (!(lambda > -1.0 && lambda < 0.0)) {
    std::ostringstream msg;
    msg << "asymptotic prediction needs lambda in (-1, 0), got " << lambda;
    throw DomainError(msg.str());
  }
}

}  // namespace

std::string to_string(AsymptoticRegime r) {
  return r == AsymptoticRegime::small_t ? "small-t" : "large-t";
}

PowerLaw tauberian_map(double amplitude, double nu, AsymptoticRegime) {
  if (special::near_nonpositive_integer(nu + 1.0, 1e-12)) {
    std::ostringstream msg;
    msg << "tauberian_map: nu = " << nu << " is excluded (nu must not be -1, -2, ...)";
    throw DomainError(msg.str());
  }
  return {amplitude * special::gamma(nu + 1.0), -nu - 1.0};
}

PowerLaw tauberian_inverse(double coefficient, double power, AsymptoticRegime) {
  const double nu = -power - 1.0;
  if (special::near_nonpositive_integer(nu + 1.0, 1e-12)) {
    throw DomainError("tauberian_inverse: power must not be 0, 1, 2, ...");
  }
  return {coefficient / special::gamma(nu + 1.0), nu};
}

PowerLawFit estimate_power_law(const SolutionGrid& grid, double t_min, double t_max) {
  if (!(t_min > 0.0) || !(t_min < t_max)) {
    throw DomainError("estimate_power_law: window needs 0 < t_min < t_max");
  }
  if (grid.values.size() != grid.times.size()) {
    throw DomainError("estimate_power_law: grid size mismatch");
  }
  const double lo = t_min * (1.0 - 1e-12);
  const double hi = t_max * (1.0 + 1e-12);
  std::vector<double> x;
  std::vector<double> y;
  int sign = 0;
  for (std::size_t i = 0; i < grid.times.size(); ++i) {
    const double t = grid.times[i];
    if (t < lo || t > hi) continue;
    const double v = grid.values[i];
    const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) {
      std::ostringstream msg;
      msg << "estimate_power_law: samples change sign (or vanish) in [" << t_min << ", " << t_max
          << "]";
      throw DomainError(msg.str());
    }
    sign = s;
    x.push_back(std::log(t));
    y.push_back(std::log(std::abs(v)));
  }
  if (x.size() < 6) {
    std::ostringstream msg;
    msg << "estimate_power_law: " << x.size() << " samples in [" << t_min << ", " << t_max
        << "], at least 6 required";
    throw DomainError(msg.str());
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("estimate_power_law: samples share a single time");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    ss += r * r;
  }
  PowerLawFit fit;
  fit.amplitude = sign * std::exp(intercept);
  fit.exponent = slope;
  fit.t_min = t_min;
  fit.t_max = t_max;
  fit.rms_log_residual = std::sqrt(ss / n);
  fit.samples = static_cast<int>(x.size());
  return fit;
}

PowerLaw tail_prediction(const SourceProfile& profile, double lambda) {
  require_hypersingular(lambda);
  if (profile.decay.kind == DecayKind::power) {
    throw DomainError("tail_prediction: unsupported decay class " + profile.decay.label() +
                      " (exponential or faster required)");
  }
  return {profile.moment0, lambda - 1.0};
}

PowerLaw head_prediction(const SourceProfile& profile, double lambda) {
  require_hypersingular(lambda);
  const double g = special::gamma(lambda);
  return {profile.value_at_zero / (-g * special::gamma(1.0 - lambda)), -lambda};
}

}  // namespace hypervolt

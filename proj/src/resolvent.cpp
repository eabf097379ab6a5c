#include "hypervolt/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "hypervolt/error.hpp"
#include "hypervolt/kernel.hpp"
#include "hypervolt/parallel.hpp"
#include "hypervolt/quadrature.hpp"

namespace hypervolt {

namespace {

constexpr double kQuarter = 0.25;
constexpr double kNodePoleDistance = 1e-6;

bool is_minus_quarter(double lambda) { return std::abs(lambda + kQuarter) < 1e-12; }

// Node count (or order) of a neighbouring configuration, used for the
// per-point error estimate.
InversionConfig neighbour(const InversionConfig& cfg) {
  InversionConfig out = cfg;
  switch (cfg.method) {
    case InversionMethod::talbot:
      out.nodes = cfg.nodes > 16 ? std::max(16, 2 * cfg.nodes / 3) : 24;
      break;
    case InversionMethod::stehfest:
      out.nodes = cfg.nodes > 2 ? cfg.nodes - 2 : cfg.nodes + 2;
      break;
    case InversionMethod::euler:
      out.nodes = cfg.nodes > 4 ? cfg.nodes - 3 : cfg.nodes + 3;
      break;
  }
  return out;
}

void check_pole_clearance(const ResolventMultiplier& m, const std::vector<double>& times,
                          const InversionConfig& cfg) {
  const auto pole = m.pole();
  if (!pole) return;
  const Singularities sing = m.singularities();
  for (double t : times) {
    for (const auto& z : inversion_nodes(t, cfg, sing.abscissa)) {
      if (std::abs(z - *pole) < kNodePoleDistance) {
        std::ostringstream msg;
        msg << "solve_via_inversion: inversion node " << z << " at t = " << t
            << " is within " << kNodePoleDistance << " of the multiplier pole " << *pole;
        throw PoleError(msg.str());
      }
    }
  }
}

// Convolution of an endpoint-singular kernel with v0, written in the graded
// variable u = tau^g (tau = t - s):
//
//   int_0^t K(tau) v0(t - tau) dtau = int_0^{t^g} k(u) v0(t - u^{1/g}) du
//
// where k(u) = K(u^{1/g}) u^{1/g - 1} / g is smooth for the kernels used here.
template <class ReducedKernel>
PointValue graded_convolution(const SourceProfile& profile, double t, double g,
                              const ReducedKernel& reduced, double rel_tol) {
  const double upper = std::pow(t, g);
  std::vector<double> extra;
  for (double b : profile.breakpoints) {
    if (b > 0.0 && b < t) extra.push_back(std::pow(t - b, g));
  }
  if (profile.horizon > 0.0 && profile.horizon < t) extra.push_back(std::pow(t - profile.horizon, g));
  const auto pts = quad::breakpoints(0.0, upper, extra);

  const double inv_g = 1.0 / g;
  const auto& v0 = profile.evaluate;
  auto integrand = [&](double u) {
    const double s = t - std::pow(u, inv_g);
    return reduced(u) * v0(s);
  };
  quad::Tolerance tol;
  tol.rel = rel_tol;
  tol.abs = std::numeric_limits<double>::min();
  const auto r = quad::integrate<double>(integrand, pts, tol);
  if (r.error > 1e-7 * std::abs(r.value) && r.error > tol.abs) {
    std::ostringstream msg;
    msg << "convolution quadrature did not converge at t = " << t << " (estimate " << r.error
        << ")";
    throw ConvergenceError(msg.str(), r.error);
  }
  return {r.value, r.error};
}

double inversion_point(const SourceProfile& profile, const ResolventMultiplier& m, double t,
                       const InversionConfig& cfg) {
  const Singularities sing = m.singularities();
  const double lambda = m.lambda();
  const bool classical = lambda > 0.0;

  if (cfg.method == InversionMethod::talbot && !profile.contour_safe) {
    // Invert the multiplier alone, then convolve.
    const double g = std::min(std::abs(lambda), 1.0);
    const Transform kernel_symbol = [&m, classical](cdouble p) {
      const cdouble mult = m(p);
      return classical ? mult - 1.0 : mult;
    };
    auto reduced = [&](double u) {
      const double tau = std::pow(u, 1.0 / g);
      if (!(tau > 0.0)) return 0.0;
      return laplace_invert(kernel_symbol, tau, cfg, sing) * std::pow(u, 1.0 / g - 1.0) / g;
    };
    const auto conv = graded_convolution(profile, t, g, reduced, 1e-11);
    return (classical ? profile.evaluate(t) : 0.0) + conv.value;
  }

  Transform F;
  if (cfg.method == InversionMethod::talbot) {
    F = [&m, &profile](cdouble p) { return m(p) * profile.transform(p); };
  } else {
    F = [&m, &profile](cdouble p) { return m(p) * laplace_forward(profile, p); };
  }
  return laplace_invert(F, t, cfg, sing);
}

}  // namespace

std::string to_string(Route r) {
  switch (r) {
    case Route::inversion: return "inversion";
    case Route::resolvent: return "resolvent";
    case Route::direct: return "direct";
  }
  return "unknown";
}

Route parse_route(const std::string& s) {
  if (s == "inversion") return Route::inversion;
  if (s == "resolvent") return Route::resolvent;
  if (s == "direct") return Route::direct;
  throw InputError("unknown route '" + s + "'");
}

void require_time_grid(const std::vector<double>& times) {
  if (times.empty()) throw DomainError("time grid is empty");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0) || !std::isfinite(times[i])) {
      throw DomainError("time grid values must be positive and finite");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw DomainError("time grid must be strictly increasing");
    }
  }
}

void SolutionGrid::validate() const {
  require_time_grid(times);
  if (values.size() != times.size()) throw DomainError("solution grid: size mismatch");
  for (double v : values) {
    if (!std::isfinite(v)) throw OverflowError("solution grid: non-finite value");
  }
  if (!error_estimates.empty() && error_estimates.size() != times.size()) {
    throw DomainError("solution grid: error estimate count mismatch");
  }
}

ResolventMultiplier::ResolventMultiplier(double lambda) : lambda_(lambda), gamma_lambda_(0.0) {
  require_admissible_exponent(lambda);
  gamma_lambda_ = special::gamma(lambda);
}

cdouble ResolventMultiplier::denominator(cdouble p) const {
  return 1.0 - gamma_lambda_ * principal_power(p, -lambda_);
}

cdouble ResolventMultiplier::operator()(cdouble p) const {
  const cdouble symbol = gamma_lambda_ * principal_power(p, -lambda_);
  const cdouble den = 1.0 - symbol;
  if (std::abs(den) < 1e-12 * (1.0 + std::abs(symbol))) {
    std::ostringstream msg;
    msg << "resolvent multiplier has a pole at p = " << p << " (lambda = " << lambda_ << ")";
    throw PoleError(msg.str());
  }
  return 1.0 / den;
}

std::optional<double> ResolventMultiplier::pole() const {
  if (lambda_ <= 0.0) return std::nullopt;
  return std::pow(gamma_lambda_, 1.0 / lambda_);
}

Singularities ResolventMultiplier::singularities() const {
  Singularities s;
  if (const auto p = pole()) {
    s.abscissa = *p;
    s.poles.emplace_back(*p, 0.0);
  }
  return s;
}

cdouble multiplier(double lambda, cdouble p) { return ResolventMultiplier(lambda)(p); }

bool inversion_supports(double lambda) {
  return (lambda > -1.0 && lambda < 0.0) || (lambda > 0.0 && lambda < 2.0);
}

bool resolvent_supports(double lambda) {
  return (lambda > 0.0 && lambda <= 1.0) || is_minus_quarter(lambda);
}

namespace {

struct KernelParams {
  double g, amplitude, rate;
};

KernelParams kernel_params(double lambda) {
  if (!resolvent_supports(lambda)) {
    std::ostringstream msg;
    msg << "resolvent kernel: unsupported lambda = " << lambda
        << " (series resolvent available for lambda in (0, 1] and lambda = -1/4)";
    throw DomainError(msg.str());
  }
  if (lambda > 0.0) {
    const double gl = special::gamma(lambda);
    return {lambda, gl, gl};
  }
  const double c = -special::gamma(-kQuarter);  // = 4 Gamma(3/4)
  return {kQuarter, 1.0 / c, -1.0 / c};
}

}  // namespace

ResolventKernel::ResolventKernel(double lambda, int max_terms)
    : lambda_(lambda),
      g_(kernel_params(lambda).g),
      amplitude_(kernel_params(lambda).amplitude),
      rate_(kernel_params(lambda).rate),
      ml_(g_, g_, max_terms) {}

double ResolventKernel::reduced(double u) const { return amplitude_ * ml_(rate_ * u); }

double ResolventKernel::operator()(double t) const {
  if (!(t > 0.0)) throw DomainError("resolvent_kernel: requires t > 0");
  const double u = std::pow(t, g_);
  return std::pow(t, g_ - 1.0) * reduced(u);
}

double resolvent_kernel(double lambda, double t) { return ResolventKernel(lambda)(t); }

PointValue resolvent_solution_at(const SourceProfile& profile, const ResolventKernel& kernel,
                                 double t, const ResolventOptions& opts) {
  if (!(t > 0.0)) throw DomainError("solve_via_resolvent: requires t > 0");
  const double g = kernel.grading();
  auto reduced = [&](double u) { return kernel.reduced(u) / g; };
  const auto conv = graded_convolution(profile, t, g, reduced, opts.rel_tol);
  const double base = kernel.lambda() > 0.0 ? profile.evaluate(t) : 0.0;
  return {base + conv.value, conv.error};
}

SolutionGrid solve_via_resolvent(const SourceProfile& profile, double lambda,
                                 const std::vector<double>& times, const ResolventOptions& opts) {
  require_admissible_exponent(lambda);
  require_time_grid(times);
  const ResolventKernel kernel(lambda, opts.max_terms);

  SolutionGrid out;
  out.times = times;
  out.route = Route::resolvent;
  std::ostringstream desc;
  desc << "mittag-leffler series resolvent, graded quadrature rel_tol=" << opts.rel_tol;
  out.method = desc.str();
  out.values.resize(times.size());
  out.error_estimates.resize(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    const auto pv = resolvent_solution_at(profile, kernel, times[i], opts);
    out.values[i] = pv.value;
    out.error_estimates[i] = pv.error;
  });
  out.validate();
  return out;
}

double invert_solution_at(const SourceProfile& profile, double lambda, double t,
                          const InversionConfig& cfg) {
  require_admissible_exponent(lambda);
  if (!inversion_supports(lambda)) {
    std::ostringstream msg;
    msg << "inversion route: unsupported lambda = " << lambda
        << " (supported: (-1, 0) and (0, 2))";
    throw DomainError(msg.str());
  }
  cfg.validate();
  const ResolventMultiplier m(lambda);
  return inversion_point(profile, m, t, cfg);
}

SolutionGrid solve_via_inversion(const SourceProfile& profile, double lambda,
                                 const std::vector<double>& times, const InversionConfig& cfg) {
  require_admissible_exponent(lambda);
  if (!inversion_supports(lambda)) {
    std::ostringstream msg;
    msg << "inversion route: unsupported lambda = " << lambda
        << " (supported: (-1, 0) and (0, 2))";
    throw DomainError(msg.str());
  }
  require_time_grid(times);
  cfg.validate();
  const ResolventMultiplier m(lambda);
  check_pole_clearance(m, times, cfg);
  const InversionConfig coarse = neighbour(cfg);

  SolutionGrid out;
  out.times = times;
  out.route = Route::inversion;
  out.method = cfg.describe();
  if (cfg.method == InversionMethod::talbot && !profile.contour_safe) {
    out.method += " kernel inversion + graded convolution";
  }
  out.values.resize(times.size());
  out.error_estimates.resize(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    const double v = inversion_point(profile, m, times[i], cfg);
    const double v_coarse = inversion_point(profile, m, times[i], coarse);
    out.values[i] = v;
    out.error_estimates[i] = std::abs(v - v_coarse);
  });
  out.validate();
  return out;
}

std::function<double(double)> evaluable_solution(Route route, const SourceProfile& profile,
                                                 double lambda, const InversionConfig& cfg,
                                                 const ResolventOptions& opts) {
  switch (route) {
    case Route::inversion: {
      require_admissible_exponent(lambda);
      if (!inversion_supports(lambda)) throw DomainError("inversion route: unsupported lambda");
      cfg.validate();
      auto m = std::make_shared<const ResolventMultiplier>(lambda);
      return [m, profile, cfg](double t) { return inversion_point(profile, *m, t, cfg); };
    }
    case Route::resolvent: {
      auto kernel = std::make_shared<const ResolventKernel>(lambda, opts.max_terms);
      return [kernel, profile, opts](double t) {
        return resolvent_solution_at(profile, *kernel, t, opts).value;
      };
    }
    case Route::direct:
      break;
  }
  throw DomainError("evaluable_solution: the direct route has no pointwise evaluator");
}

}  // namespace hypervolt

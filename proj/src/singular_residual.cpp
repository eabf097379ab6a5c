#include "hypervolt/singular_residual.hpp"

#include <cmath>
#include <sstream>

#include "hypervolt/error.hpp"
#include "hypervolt/kernel.hpp"
#include "hypervolt/quadrature.hpp"

namespace hypervolt {

namespace {

constexpr double kAcceptable = 1e-5;

}  // namespace

FinitePartValue finite_part_convolution(const Evaluable& v, double t, double lambda,
                                        const FinitePartOptions& opts) {
  require_admissible_exponent(lambda);
  if (!(lambda > -1.0)) {
    throw DomainError("finite_part_convolution: single subtraction needs lambda > -1");
  }
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("finite_part_convolution: requires t > 0");
  if (opts.max_panels < 1) throw DomainError("finite_part_convolution: max_panels must be >= 1");

  const double vt = v(t);
  const double half = 0.5 * t;
  const double lm1 = lambda - 1.0;

  // s = half x^4, ds = 4 half x^3 dx
  auto left = [&](double x) {
    const double x3 = x * x * x;
    const double s = half * x3 * x;
    return std::pow(t - s, lm1) * (v(s) - vt) * 4.0 * half * x3;
  };
  // tau = t - s = half y^4
  auto right = [&](double y) {
    const double y3 = y * y * y;
    const double tau = half * y3 * y;
    if (tau == 0.0) return 0.0;
    return std::pow(tau, lm1) * (v(t - tau) - vt) * 4.0 * half * y3;
  };
  auto level = [&](int panels) {
    return quad::gauss_legendre<double>(left, 0.0, 1.0, panels) +
           quad::gauss_legendre<double>(right, 0.0, 1.0, panels);
  };

  const double primitive = vt * finite_part_primitive(PowerKernel(lambda), t);
  int panels = 1;
  double prev = level(panels);
  double diff = 0.0;
  for (;;) {
    const int next_panels = 2 * panels;
    const double cur = level(next_panels);
    diff = std::abs(cur - prev);
    prev = cur;
    panels = next_panels;
    const double scale = std::abs(cur + primitive);
    if (diff <= opts.rel_tol * scale || diff == 0.0) break;
    if (2 * panels > opts.max_panels) {
      if (diff <= kAcceptable * scale) break;
      std::ostringstream msg;
      msg << "finite_part_convolution: mesh halving did not stabilise at t = " << t
          << " (last change " << diff << ")";
      throw ConvergenceError(msg.str(), diff);
    }
  }
  return {prev + primitive, diff, panels};
}

ResidualReport residual(const SourceProfile& profile, double lambda, const Evaluable& v, double t,
                        const FinitePartOptions& opts) {
  const auto conv = finite_part_convolution(v, t, lambda, opts);
  ResidualReport r;
  r.t = t;
  r.solution_value = v(t);
  r.convolution_value = conv.value;
  r.residual = r.solution_value - profile.evaluate(t) - conv.value;
  r.quadrature_error_estimate = conv.error_estimate;
  if (!std::isfinite(r.residual)) {
    throw ConvergenceError("residual: non-finite residual", -1.0);
  }
  return r;
}

}  // namespace hypervolt

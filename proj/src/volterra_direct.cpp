#include "hypervolt/volterra_direct.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>

#include "hypervolt/error.hpp"
#include "hypervolt/kernel.hpp"
#include "hypervolt/parallel.hpp"

namespace hypervolt {

namespace {

constexpr double kInstability = 1e-8;

// h^lambda * int_{k-1}^{k} u^(lambda-1) du, without cancellation for large k.
double cell_moment(double lambda, double hl, long k) {
  if (k == 1) return hl / lambda;
  const double kd = static_cast<double>(k);
  const double diff = -std::pow(kd, lambda) * std::expm1(lambda * std::log1p(-1.0 / kd));
  return hl * diff / lambda;
}

// h^lambda * int_0^1 (k - 1 + y)^(lambda-1) y dy for k >= 2.
double cell_first_moment(double lambda, double hl, long k) {
  using gl = boost::math::quadrature::gauss<double, 20>;
  const auto& x = gl::abscissa();
  const auto& w = gl::weights();
  const double a = static_cast<double>(k - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (const double sgn : {1.0, -1.0}) {
      if (i == 0 && sgn < 0.0 && x[0] == 0.0) continue;
      const double y = 0.5 + 0.5 * sgn * x[i];
      sum += w[i] * std::pow(a + y, lambda - 1.0) * y;
    }
  }
  return hl * 0.5 * sum;
}

struct CellWeights {
  std::vector<double> left;   // A_k: weight of the older endpoint of cell k
  std::vector<double> right;  // B_k: weight of the newer endpoint of cell k
};

// Cells are counted backwards from t_n: cell k is [t_{n-k}, t_{n-k+1}].
CellWeights cell_weights(double lambda, double h, long count, ProductRule rule) {
  CellWeights cw;
  cw.left.assign(static_cast<std::size_t>(count) + 1, 0.0);
  cw.right.assign(static_cast<std::size_t>(count) + 1, 0.0);
  const double hl = std::pow(h, lambda);
  for (long k = 1; k <= count; ++k) {
    const double c = cell_moment(lambda, hl, k);
    if (rule == ProductRule::product_rectangle) {
      cw.right[k] = c;
      continue;
    }
    if (k == 1) {
      cw.left[1] = hl / (lambda + 1.0);
      cw.right[1] = hl / (lambda * (lambda + 1.0));
    } else {
      const double a = cell_first_moment(lambda, hl, k);
      cw.left[k] = a;
      cw.right[k] = c - a;
    }
  }
  return cw;
}

void require_classical(double lambda) {
  require_admissible_exponent(lambda);
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    std::ostringstream msg;
    msg << "product integration requires lambda in (0, 1], got " << lambda;
    throw DomainError(msg.str());
  }
}

double interpolate(const SolutionGrid& g, double v_at_zero, double h, double t) {
  const auto n = static_cast<long>(std::floor(t / h));
  const long last = static_cast<long>(g.times.size());
  if (n >= last) return g.values.back();
  const double t0 = n == 0 ? 0.0 : g.times[n - 1];
  const double v0 = n == 0 ? v_at_zero : g.values[n - 1];
  const double t1 = g.times[n];
  const double v1 = g.values[n];
  const double y = (t - t0) / (t1 - t0);
  return v0 + y * (v1 - v0);
}

}  // namespace

std::string to_string(ProductRule r) {
  return r == ProductRule::product_rectangle ? "product-rectangle" : "product-trapezoid";
}

void StepperConfig::validate() const {
  if (!(step > 0.0) || !(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("stepper: step and horizon must be positive");
  }
  if (step > horizon / 8.0) throw DomainError("stepper: step must not exceed horizon / 8");
  if (horizon / step > 1e7) throw DomainError("stepper: horizon / step must not exceed 1e7");
}

long StepperConfig::steps() const {
  return static_cast<long>(std::ceil(horizon / step - 1e-9));
}

std::vector<double> product_weights(double lambda, double h, long n, ProductRule rule) {
  require_classical(lambda);
  if (!(h > 0.0) || n < 1) throw DomainError("product_weights: requires h > 0 and n >= 1");
  const auto cw = cell_weights(lambda, h, n, rule);
  std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
  for (long k = 1; k <= n; ++k) {
    w[n - k] += cw.left[k];
    w[n - k + 1] += cw.right[k];
  }
  return w;
}

SolutionGrid solve_product_integration(const SourceProfile& profile, double lambda,
                                       const StepperConfig& cfg) {
  require_classical(lambda);
  cfg.validate();
  const long count = cfg.steps();
  const double h = cfg.step;
  const auto cw = cell_weights(lambda, h, count, cfg.rule);

  const double diag = 1.0 - cw.right[1];
  if (std::abs(diag) < kInstability) {
    std::ostringstream msg;
    msg << "product integration: step instability, |1 - w_nn| = " << std::abs(diag);
    throw ConvergenceError(msg.str(), std::abs(diag));
  }

  // History weight of v_{n-k} for 1 <= k < n: cell k's older endpoint plus
  // cell (k+1)'s newer endpoint.
  std::vector<double> hist(static_cast<std::size_t>(count) + 1, 0.0);
  for (long k = 1; k < count; ++k) hist[k] = cw.left[k] + cw.right[k + 1];

  std::vector<double> v(static_cast<std::size_t>(count) + 1, 0.0);
  v[0] = profile.evaluate(0.0);
  SolutionGrid out;
  out.route = Route::direct;
  std::ostringstream desc;
  desc << to_string(cfg.rule) << " h=" << h;
  out.method = desc.str();
  out.times.reserve(count);
  out.values.reserve(count);
  for (long n = 1; n <= count; ++n) {
    const double tn = static_cast<double>(n) * h;
    double rhs = profile.evaluate(tn) + cw.left[n] * v[0];
    for (long j = 1; j < n; ++j) rhs += hist[n - j] * v[j];
    v[n] = rhs / diag;
    out.times.push_back(tn);
    out.values.push_back(v[n]);
  }
  out.validate();
  return out;
}

SolutionGrid solve_direct_at(const SourceProfile& profile, double lambda,
                             const std::vector<double>& times, const StepperConfig& cfg) {
  require_classical(lambda);
  require_time_grid(times);
  StepperConfig fine = cfg;
  fine.horizon = std::max(cfg.horizon, times.back());
  StepperConfig coarse = fine;
  fine.step = cfg.step / 2.0;
  fine.validate();
  coarse.validate();

  SolutionGrid runs[2];
  parallel_for(2, [&](std::size_t i) {
    runs[i] = solve_product_integration(profile, lambda, i == 0 ? coarse : fine);
  });

  const double v_at_zero = profile.evaluate(0.0);
  SolutionGrid out;
  out.times = times;
  out.route = Route::direct;
  std::ostringstream desc;
  desc << runs[1].method << " (estimate against h=" << coarse.step << ")";
  out.method = desc.str();
  for (double t : times) {
    const double vc = interpolate(runs[0], v_at_zero, coarse.step, t);
    const double vf = interpolate(runs[1], v_at_zero, fine.step, t);
    out.values.push_back(vf);
    out.error_estimates.push_back(std::abs(vf - vc));
  }
  out.validate();
  return out;
}

}  // namespace hypervolt

#ifndef HYPERVOLT_RESOLVENT_HPP
#define HYPERVOLT_RESOLVENT_HPP

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "hypervolt/laplace.hpp"
#include "hypervolt/profile.hpp"
#include "hypervolt/solution.hpp"
#include "hypervolt/special.hpp"

namespace hypervolt {

using cdouble = std::complex<double>;

/// The Laplace-domain factor 1 / (1 - Gamma(lambda) p^(-lambda)) that maps
/// L(v0) to L(v).  At lambda = -1/4 this is 1 / (1 + 4 Gamma(3/4) p^(1/4)).
///
/// Evaluated on the principal branch over C \ (-inf, 0].  For lambda in
/// (0, 2) the denominator has exactly one zero on that sheet, the real pole
/// Gamma(lambda)^(1/lambda); for lambda in (-1, 0) it has none.
class ResolventMultiplier {
 public:
  explicit ResolventMultiplier(double lambda);

  cdouble operator()(cdouble p) const;

  /// 1 - Gamma(lambda) p^(-lambda).
  cdouble denominator(cdouble p) const;

  double lambda() const noexcept { return lambda_; }
  double gamma_lambda() const noexcept { return gamma_lambda_; }

  /// The real pole for lambda > 0; nullopt otherwise.
  std::optional<double> pole() const;

  /// Inversion hints: abscissa at the pole (or 0) plus the pole itself.
  Singularities singularities() const;

 private:
  double lambda_;
  double gamma_lambda_;
};

/// One-shot multiplier; throws PoleError when
/// |denominator| < 1e-12 (1 + |Gamma(lambda) p^(-lambda)|).
cdouble multiplier(double lambda, cdouble p);

/// Exponents the inversion route accepts: (-1, 0) and (0, 2).
bool inversion_supports(double lambda);

/// Exponents with a series resolvent: (0, 1] and -1/4.
bool resolvent_supports(double lambda);

/// Time-domain resolvent kernel R with L(R) = M(p) - 1 for lambda in (0, 1]
/// and L(R) = M(p) for lambda = -1/4.  Both have the form
///
///   R(t) = A t^(g - 1) E_{g,g}(b t^g)
///
/// with (A, b, g) = (Gamma(lambda), Gamma(lambda), lambda) for lambda > 0
/// and (1/c, -1/c, 1/4), c = 4 Gamma(3/4), at lambda = -1/4.
class ResolventKernel {
 public:
  explicit ResolventKernel(double lambda, int max_terms = 2000);

  double operator()(double t) const;

  /// A E_{g,g}(b u): the smooth factor left after the substitution u = t^g.
  double reduced(double u) const;

  double lambda() const noexcept { return lambda_; }
  double grading() const noexcept { return g_; }
  double amplitude() const noexcept { return amplitude_; }
  double rate() const noexcept { return rate_; }

 private:
  double lambda_;
  double g_;
  double amplitude_;
  double rate_;
  special::MittagLeffler ml_;
};

double resolvent_kernel(double lambda, double t);

struct ResolventOptions {
  double rel_tol = 1e-11;
  int max_terms = 2000;
};

/// v = L^{-1}[M(p) L(v0)] evaluated at each time.
///
/// With a Talbot config and a profile whose transform is not contour-safe
/// (compact support, delays, sample files), the transform product cannot be
/// put on a deformed contour.  The route then inverts M(p) alone and applies
/// the convolution theorem: v = [lambda > 0] v0 + K * v0, K = L^{-1}[M - [lambda > 0]].
///
/// error_estimates hold the change against a coarser config of the same
/// method.
SolutionGrid solve_via_inversion(const SourceProfile& profile, double lambda,
                                 const std::vector<double>& times,
                                 const InversionConfig& cfg = {});

/// Single-time form of solve_via_inversion (no error estimate).
double invert_solution_at(const SourceProfile& profile, double lambda, double t,
                          const InversionConfig& cfg = {});

/// v = [lambda > 0] v0 + R * v0 by adaptive quadrature in u = (t - s)^g,
/// which absorbs the kernel's endpoint singularity.
SolutionGrid solve_via_resolvent(const SourceProfile& profile, double lambda,
                                 const std::vector<double>& times,
                                 const ResolventOptions& opts = {});

/// Single-time form with the quadrature error estimate.
struct PointValue {
  double value;
  double error;
};
PointValue resolvent_solution_at(const SourceProfile& profile, const ResolventKernel& kernel,
                                 double t, const ResolventOptions& opts = {});

/// A callable v(t) backed by one of the Laplace routes, for residual checks.
std::function<double(double)> evaluable_solution(Route route, const SourceProfile& profile,
                                                 double lambda, const InversionConfig& cfg = {},
                                                 const ResolventOptions& opts = {});

}  // namespace hypervolt

#endif  // HYPERVOLT_RESOLVENT_HPP

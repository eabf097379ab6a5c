#ifndef HYPERVOLT_SPECIAL_HPP
#define HYPERVOLT_SPECIAL_HPP

#include <complex>
#include <vector>

namespace hypervolt::special {

using cdouble = std::complex<double>;

/// Gamma function on the complex plane minus {0, -1, -2, ...}.
///
/// Lanczos approximation (g = 607/128, 15 terms) for Re z >= 1/2 and the
/// reflection formula below that.  Relative error stays under 1e-12 for
/// |z| <= 20 at distance >= 1e-3 from the poles.  Throws PoleError when z
/// is within a few ulps of a nonpositive integer.
cdouble gamma(cdouble z);

/// Real-argument convenience wrapper around the complex routine.
double gamma(double x);

/// 1/Gamma(x); zero at the poles instead of throwing.
double rgamma(double x);

/// True when x is within `tol` of one of 0, -1, -2, ...
bool near_nonpositive_integer(double x, double tol);

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) for real z,
/// evaluated by its power series.
///
/// Reciprocal Gamma coefficients are tabulated once at construction, so one
/// instance can be reused across many arguments (and threads).  The series
/// is summed in extended precision with Neumaier compensation and cut at the
/// first index past the peak term whose magnitude falls below
/// 1e-16 (1 + |partial sum|).
///
/// The usable range is bounded by the term cap and, for z < 0, by
/// cancellation.  With the default cap of 400:
///
///   alpha   z > 0 (cap-limited)   z < 0 (cancellation-limited)
///   1/4     ~2.45                 ~-1.6
///   1/2     ~10.2                 ~-2.9
///   1       ~255                  ~-10
///
/// (beta = alpha; beta = 1 shifts the limits by a few percent.)
///
/// Outside that range evaluation throws ConvergenceError instead of
/// returning a degraded value.
class MittagLeffler {
 public:
  static constexpr int kDefaultMaxTerms = 400;

  MittagLeffler(double alpha, double beta, int max_terms = kDefaultMaxTerms);

  double operator()(double z) const;

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  int max_terms() const noexcept { return static_cast<int>(rgamma_.size()); }

 private:
  double alpha_;
  double beta_;
  std::vector<long double> rgamma_;  // 1/Gamma(alpha k + beta)
};

/// One-shot form of MittagLeffler; rebuilds the coefficient table per call.
double mittag_leffler(double alpha, double beta, double z,
                      int max_terms = MittagLeffler::kDefaultMaxTerms);

}  // namespace hypervolt::special

#endif  // HYPERVOLT_SPECIAL_HPP

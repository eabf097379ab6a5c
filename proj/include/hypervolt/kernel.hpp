#ifndef HYPERVOLT_KERNEL_HPP
#define HYPERVOLT_KERNEL_HPP

#include <complex>

namespace hypervolt {

using cdouble = std::complex<double>;

/// Minimum distance from {0, -1, -2, ...} for an exponent to be admissible.
inline constexpr double kExponentPoleTolerance = 1e-9;

/// Throws PoleError unless `lambda` is finite and at least
/// kExponentPoleTolerance away from every nonpositive integer.
void require_admissible_exponent(double lambda);

/// The power kernel t_+^(lambda - 1), or its normalized form
/// Phi_lambda = t_+^(lambda - 1) / Gamma(lambda).
class PowerKernel {
 public:
  explicit PowerKernel(double lambda, bool normalized = false);

  double lambda() const noexcept { return lambda_; }
  bool normalized() const noexcept { return normalized_; }
  double gamma_lambda() const noexcept { return gamma_lambda_; }

  /// Pointwise value for t > 0 (zero for t <= 0).
  double operator()(double t) const;

 private:
  double lambda_;
  bool normalized_;
  double gamma_lambda_;
};

/// p^(-lambda) on the principal branch, p off the closed negative real axis.
cdouble principal_power(cdouble p, double exponent);

/// Laplace symbol Gamma(lambda) p^(-lambda) (just p^(-lambda) for the
/// normalized kernel), continued analytically in lambda.  Requires Re p > 0.
cdouble laplace_symbol(const PowerKernel& k, cdouble p);

/// Same symbol on the whole cut plane C \ (-inf, 0]; used on deformed
/// inversion contours.
cdouble laplace_symbol_cut_plane(const PowerKernel& k, cdouble p);

/// Finite part of int_0^t (t - s)^(lambda - 1) ds, i.e. t^lambda / lambda
/// (divided by Gamma(lambda) for the normalized kernel).  Classical for
/// lambda > 0; for lambda < 0 the divergent endpoint power is dropped.
double finite_part_primitive(const PowerKernel& k, double t);

}  // namespace hypervolt

#endif  // HYPERVOLT_KERNEL_HPP

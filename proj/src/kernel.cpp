#include "hypervolt/kernel.hpp"

#include <cmath>
#include <sstream>

#include "hypervolt/error.hpp"
#include "hypervolt/special.hpp"

namespace hypervolt {

void require_admissible_exponent(double lambda) {
  if (!std::isfinite(lambda)) throw DomainError("kernel exponent must be finite");
  if (special::near_nonpositive_integer(lambda, kExponentPoleTolerance)) {
    std::ostringstream msg;
    msg << "inadmissible kernel exponent lambda = " << lambda
        << ": lambda must not be one of 0, -1, -2, ...";
    throw PoleError(msg.str());
  }
}

PowerKernel::PowerKernel(double lambda, bool normalized)
    : lambda_(lambda), normalized_(normalized), gamma_lambda_(0.0) {
  require_admissible_exponent(lambda);
  gamma_lambda_ = special::gamma(lambda);
}

double PowerKernel::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  const double v = std::pow(t, lambda_ - 1.0);
  return normalized_ ? v / gamma_lambda_ : v;
}

cdouble principal_power(cdouble p, double exponent) {
  if (p.imag() == 0.0 && p.real() <= 0.0) {
    throw DomainError("principal_power: p lies on the branch cut (-inf, 0]");
  }
  return std::exp(exponent * cdouble(std::log(std::abs(p)), std::arg(p)));
}

cdouble laplace_symbol_cut_plane(const PowerKernel& k, cdouble p) {
  const cdouble power = principal_power(p, -k.lambda());
  return k.normalized() ? power : k.gamma_lambda() * power;
}

cdouble laplace_symbol(const PowerKernel& k, cdouble p) {
  if (!(p.real() > 0.0)) throw DomainError("laplace_symbol: requires Re p > 0");
  return laplace_symbol_cut_plane(k, p);
}

double finite_part_primitive(const PowerKernel& k, double t) {
  if (!(t > 0.0)) throw DomainError("finite_part_primitive: requires t > 0");
  const double lambda = k.lambda();
  const double v = std::pow(t, lambda) / lambda;
  return k.normalized() ? v / k.gamma_lambda() : v;
}

}  // namespace hypervolt

#include "hypervolt/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hypervolt/error.hpp"

namespace hypervolt::special {

namespace {

// Godfrey's coefficients for g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczosCoef = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,
    .15808870322491248884e-3,   -.21026444172410488319e-3,
    .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,
    .36899182659531622704e-5};

constexpr double kPi = std::numbers::pi;
const double kSqrtTwoPi = std::sqrt(2.0 * kPi);

cdouble lanczos_gamma(cdouble z) {
  // Gamma(z) = Gamma(x + 1) with x = z - 1.
  const cdouble x = z - 1.0;
  cdouble series = kLanczosCoef[0];
  for (std::size_t k = 1; k < kLanczosCoef.size(); ++k) {
    series += kLanczosCoef[k] / (x + static_cast<double>(k));
  }
  const cdouble t = x + kLanczosG + 0.5;
  return kSqrtTwoPi * std::exp((x + 0.5) * std::log(t) - t) * series;
}

// sin(pi z) with the integer part of Re z removed first, so the result keeps
// full relative accuracy next to the zeros.
cdouble sin_pi(cdouble z) {
  const double n = std::round(z.real());
  const cdouble frac(z.real() - n, z.imag());
  const cdouble s = std::sin(kPi * frac);
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

}  // namespace

bool near_nonpositive_integer(double x, double tol) {
  if (x > tol) return false;
  return std::abs(x - std::round(x)) <= tol;
}

cdouble gamma(cdouble z) {
  if (z.real() < 0.5) {
    const double n = std::round(z.real());
    const double tol =
        8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(n));
    if (n <= 0.0 && std::abs(z.real() - n) <= tol && std::abs(z.imag()) <= tol) {
      std::ostringstream msg;
      msg << "gamma: argument " << z.real() << " is a pole (nonpositive integer)";
      throw PoleError(msg.str());
    }
    return kPi / (sin_pi(z) * lanczos_gamma(1.0 - z));
  }
  return lanczos_gamma(z);
}

double gamma(double x) { return gamma(cdouble(x, 0.0)).real(); }

double rgamma(double x) {
  if (x <= 0.0 && x == std::round(x)) return 0.0;
  return 1.0 / gamma(x);
}

MittagLeffler::MittagLeffler(double alpha, double beta, int max_terms)
    : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw DomainError("mittag_leffler: alpha must be positive and finite");
  }
  if (max_terms < 2) throw DomainError("mittag_leffler: max_terms must be >= 2");
  rgamma_.resize(static_cast<std::size_t>(max_terms));
  for (int k = 0; k < max_terms; ++k) {
    const long double arg =
        static_cast<long double>(alpha) * k + static_cast<long double>(beta);
    if (arg <= 0.0L && arg == std::round(arg)) {
      rgamma_[k] = 0.0L;
    } else {
      const long double g = std::tgamma(arg);
      rgamma_[k] = std::isinf(g) ? 0.0L : 1.0L / g;
    }
  }
}

double MittagLeffler::operator()(double z) const {
  if (!std::isfinite(z)) throw DomainError("mittag_leffler: non-finite argument");
  const long double zl = z;
  const long double az = std::fabs(zl);

  // Neumaier-compensated sum in extended precision.
  long double sum = 0.0L;
  long double comp = 0.0L;
  long double abs_sum = 0.0L;
  long double power = 1.0L;  // z^k
  long double prev_bound = std::numeric_limits<long double>::infinity();

  const int cap = max_terms();
  for (int k = 0; k < cap; ++k) {
    const long double term = power * rgamma_[k];
    const long double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
    abs_sum += std::fabs(term);

    // Bound for the next term; stop only once terms are decreasing, the
    // coefficient argument is positive (past any Gamma pole), and the bound
    // is below the relative floor.
    if (k + 1 >= cap) break;
    const long double next_bound = std::fabs(power) * az * std::fabs(rgamma_[k + 1]);
    const long double arg = static_cast<long double>(alpha_) * (k + 1) + beta_;
    const bool past_peak = next_bound <= prev_bound && arg > 0.0L;
    prev_bound = next_bound;
    const long double total = sum + comp;
    if (!std::isfinite(total) || !std::isfinite(next_bound)) {
      std::ostringstream msg;
      msg << "mittag_leffler(" << alpha_ << ", " << beta_ << ", " << z
          << "): partial sums overflow";
      throw ConvergenceError(msg.str());
    }
    if (past_peak && next_bound < 1e-16L * (1.0L + std::fabs(total))) {
      const long double rounding =
          abs_sum * std::numeric_limits<long double>::epsilon() * 4.0L;
      if (rounding > 1e-14L * (1.0L + std::fabs(total))) {
        std::ostringstream msg;
        msg << "mittag_leffler(" << alpha_ << ", " << beta_ << ", " << z
            << "): series cancellation exceeds the accuracy target";
        throw ConvergenceError(msg.str(), static_cast<double>(rounding));
      }
      return static_cast<double>(total);
    }
    power *= zl;
    if (!std::isfinite(power)) break;
  }
  std::ostringstream msg;
  msg << "mittag_leffler(" << alpha_ << ", " << beta_ << ", " << z
      << "): series did not converge within " << cap << " terms";
  throw ConvergenceError(msg.str());
}

double mittag_leffler(double alpha, double beta, double z, int max_terms) {
  return MittagLeffler(alpha, beta, max_terms)(z);
}

}  // namespace hypervolt::special

#ifndef HYPERVOLT_SINGULAR_RESIDUAL_HPP
#define HYPERVOLT_SINGULAR_RESIDUAL_HPP

#include <functional>
#include <string>

#include "hypervolt/profile.hpp"

namespace hypervolt {

using Evaluable = std::function<double(double)>;

struct FinitePartOptions {
  double rel_tol = 1e-11;  // stop halving once successive levels agree to this
  int max_panels = 512;    // per half-interval, in the graded variable
};

struct FinitePartValue {
  double value;
  double error_estimate;  // |I_2n - I_n| at the last level
  int panels;
};

/// Hadamard finite part of int_0^t (t - s)^(lambda - 1) v(s) ds by single
/// subtraction:
///
///   int_0^t (t - s)^(lambda - 1) [v(s) - v(t)] ds + v(t) t^lambda / lambda.
///
/// [0, t] is split at t/2.  The left half uses s = (t/2) x^4 and the right
/// half t - s = (t/2) y^4, with composite 10-point Gauss-Legendre in x and y
/// and the panel count doubled until successive levels agree.  Requires
/// lambda in (-1, 0) or lambda > 0 (admissible).  Throws ConvergenceError
/// when the levels do not agree to 1e-5 relative by max_panels.
FinitePartValue finite_part_convolution(const Evaluable& v, double t, double lambda = -0.25,
                                        const FinitePartOptions& opts = {});

struct ResidualReport {
  double t;
  double residual;           // v(t) - v0(t) - (k * v)(t)
  double convolution_value;  // (k * v)(t), finite part
  double solution_value;     // v(t)
  std::string regularization = "subtraction-at-t";
  double quadrature_error_estimate;
};

ResidualReport residual(const SourceProfile& profile, double lambda, const Evaluable& v, double t,
                        const FinitePartOptions& opts = {});

}  // namespace hypervolt

#endif  // HYPERVOLT_SINGULAR_RESIDUAL_HPP

#ifndef HYPERVOLT_LAPLACE_HPP
#define HYPERVOLT_LAPLACE_HPP

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "hypervolt/profile.hpp"

namespace hypervolt {

using cdouble = std::complex<double>;
using Transform = std::function<cdouble(cdouble)>;

enum class InversionMethod { talbot, stehfest, euler };

std::string to_string(InversionMethod m);
InversionMethod parse_inversion_method(const std::string& s);

/// Numerical inverse Laplace transform settings.
///
///  - talbot: midpoint rule on Weideman's optimised cotangent contour
///      z(theta) = (mu / t) (0.5017 theta cot(0.6407 theta) - 0.6122 + 0.2645 i theta),
///    with mu = contour_scale * min(nodes, 24).  Up to 24 nodes the contour
///    grows with the node count; beyond that the contour is fixed and extra
///    nodes only refine the quadrature, so the error never grows with nodes.
///  - stehfest: Gaver-Stehfest with `nodes` (even, <= 18) real samples.
///  - euler: Abate-Whitt Fourier series on the Bromwich line with binomial
///    Euler summation; `nodes` is the Euler order M (2M + 1 samples).
struct InversionConfig {
  InversionMethod method = InversionMethod::talbot;
  int nodes = 48;
  double contour_scale = 1.0;

  static InversionConfig talbot(int nodes = 48, double contour_scale = 1.0);
  static InversionConfig stehfest(int nodes = 16);
  static InversionConfig euler(int nodes = 18);

  /// Throws DomainError when the node count or scale is out of range.
  void validate() const;
  std::string describe() const;
};

/// What the inversion needs to know about F's singularities.  All methods
/// invert G(q) = F(abscissa + q) and multiply by exp(abscissa t), so every
/// singularity must satisfy Re p <= abscissa.  Listed poles are checked
/// against the node set.
struct Singularities {
  double abscissa = 0.0;
  std::vector<cdouble> poles;
};

/// Distance below which a pole is considered to sit on the node set.
inline constexpr double kContourPoleDistance = 1e-8;

/// Sample points in the p-plane used to invert at time t.
std::vector<cdouble> inversion_nodes(double t, const InversionConfig& cfg, double abscissa = 0.0);

/// Approximate f(t) from its transform F.  Requires t > 0.
double laplace_invert(const Transform& F, double t, const InversionConfig& cfg,
                      const Singularities& sing = {});

/// Laplace transform of the profile: closed form when the profile has one,
/// otherwise adaptive quadrature.  Requires Re p > 0.
cdouble laplace_forward(const SourceProfile& profile, cdouble p);

/// Quadrature route regardless of a closed form; relative target `rel_tol`.
/// Throws ConvergenceError (carrying the achieved estimate) when the
/// estimate exceeds 1e-10 relative.
cdouble laplace_forward_quadrature(const SourceProfile& profile, cdouble p, double rel_tol = 1e-12);

}  // namespace hypervolt

#endif  // HYPERVOLT_LAPLACE_HPP

#include "hypervolt/laplace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

#include "hypervolt/error.hpp"
#include "hypervolt/quadrature.hpp"

namespace hypervolt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
constexpr double kLn10 = std::numbers::ln10;

// Weideman's cotangent contour parameters.
constexpr double kTalbotA = 0.5017;
constexpr double kTalbotB = 0.6407;
constexpr double kTalbotC = 0.6122;
constexpr double kTalbotD = 0.2645;
constexpr int kTalbotReferenceNodes = 24;

struct TalbotNode {
  cdouble z;       // contour point (unshifted, times t)
  cdouble dz;      // dz/dtheta (times t)
  double weight;   // 2 for theta > 0, 1 for theta = 0
};

// Contour geometry for unit time and unit scale; the caller multiplies by
// mu / t.
std::vector<TalbotNode> talbot_geometry(int n) {
  std::vector<TalbotNode> nodes;
  nodes.reserve(static_cast<std::size_t>(n / 2 + 1));
  for (int k = 0; k < n; ++k) {
    const double theta = -kPi + (k + 0.5) * 2.0 * kPi / n;
    if (theta < 0.0) continue;
    if (theta == 0.0) {
      nodes.push_back({cdouble(kTalbotA / kTalbotB - kTalbotC, 0.0), cdouble(0.0, kTalbotD), 1.0});
      continue;
    }
    const double bt = kTalbotB * theta;
    const double cot = std::cos(bt) / std::sin(bt);
    const double s = std::sin(bt);
    const cdouble z(kTalbotA * theta * cot - kTalbotC, kTalbotD * theta);
    const cdouble dz(kTalbotA * cot - kTalbotA * bt / (s * s), kTalbotD);
    nodes.push_back({z, dz, 2.0});
  }
  return nodes;
}

double talbot_mu(const InversionConfig& cfg) {
  return cfg.contour_scale * std::min(cfg.nodes, kTalbotReferenceNodes);
}

// Gaver-Stehfest weights V_k, k = 1..n, accumulated in extended precision.
const std::vector<long double>& stehfest_weights(int n) {
  static std::array<std::vector<long double>, 19> cache;
  static std::once_flag flags[19];
  std::call_once(flags[n], [n] {
    const int half = n / 2;
    auto fact = [](int m) {
      long double f = 1.0L;
      for (int i = 2; i <= m; ++i) f *= i;
      return f;
    };
    std::vector<long double> v(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
      long double sum = 0.0L;
      for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
        sum += std::pow(static_cast<long double>(j), half) * fact(2 * j) /
               (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
      }
      v[k - 1] = ((k + half) % 2 == 0 ? 1.0L : -1.0L) * sum;
    }
    cache[n] = std::move(v);
  });
  return cache[n];
}

// Abate-Whitt Euler weights eta_k, k = 0..2M.
std::vector<double> euler_weights(int m) {
  std::vector<double> xi(static_cast<std::size_t>(2 * m + 1), 1.0);
  xi[0] = 0.5;
  xi[2 * m] = std::ldexp(1.0, -m);
  double binom = 1.0;  // C(m, k)
  for (int k = 1; k < m; ++k) {
    binom = binom * (m - k + 1) / k;
    xi[2 * m - k] = xi[2 * m - k + 1] + std::ldexp(binom, -m);
  }
  for (int k = 0; k <= 2 * m; ++k) {
    if (k % 2 == 1) xi[k] = -xi[k];
  }
  return xi;
}

void check_nodes(const std::vector<cdouble>& nodes, const Singularities& sing, double t) {
  for (const auto& z : nodes) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1e300) {
      std::ostringstream msg;
      msg << "laplace_invert: node magnitudes overflow at t = " << t;
      throw OverflowError(msg.str());
    }
    for (const auto& pole : sing.poles) {
      if (std::abs(z - pole) < kContourPoleDistance) {
        std::ostringstream msg;
        msg << "laplace_invert: pole at " << pole << " lies on the inversion node set (t = " << t
            << ")";
        throw PoleError(msg.str());
      }
    }
  }
}

}  // namespace

std::string to_string(InversionMethod m) {
  switch (m) {
    case InversionMethod::talbot: return "talbot";
    case InversionMethod::stehfest: return "stehfest";
    case InversionMethod::euler: return "euler";
  }
  return "unknown";
}

InversionMethod parse_inversion_method(const std::string& s) {
  if (s == "talbot") return InversionMethod::talbot;
  if (s == "stehfest") return InversionMethod::stehfest;
  if (s == "euler") return InversionMethod::euler;
  throw InputError("unknown inversion method '" + s + "' (expected talbot, stehfest or euler)");
}

InversionConfig InversionConfig::talbot(int nodes, double contour_scale) {
  return {InversionMethod::talbot, nodes, contour_scale};
}
InversionConfig InversionConfig::stehfest(int nodes) {
  return {InversionMethod::stehfest, nodes, 1.0};
}
InversionConfig InversionConfig::euler(int nodes) { return {InversionMethod::euler, nodes, 1.0}; }

void InversionConfig::validate() const {
  switch (method) {
    case InversionMethod::talbot:
      if (nodes < 16 || nodes > 128) {
        throw DomainError("talbot nodes must lie in [16, 128]");
      }
      if (!(contour_scale > 0.0) || !std::isfinite(contour_scale)) {
        throw DomainError("talbot contour_scale must be positive");
      }
      break;
    case InversionMethod::stehfest:
      if (nodes < 2 || nodes > 18 || nodes % 2 != 0) {
        throw DomainError("stehfest nodes must be even and at most 18");
      }
      break;
    case InversionMethod::euler:
      if (nodes < 4 || nodes > 40) throw DomainError("euler order must lie in [4, 40]");
      break;
  }
}

std::string InversionConfig::describe() const {
  std::ostringstream os;
  os << to_string(method) << "(nodes=" << nodes;
  if (method == InversionMethod::talbot) os << ", contour_scale=" << contour_scale;
  os << ")";
  return os.str();
}

std::vector<cdouble> inversion_nodes(double t, const InversionConfig& cfg, double abscissa) {
  if (!(t > 0.0)) throw DomainError("laplace_invert: requires t > 0");
  cfg.validate();
  std::vector<cdouble> out;
  switch (cfg.method) {
    case InversionMethod::talbot: {
      const double scale = talbot_mu(cfg) / t;
      for (const auto& n : talbot_geometry(cfg.nodes)) out.push_back(abscissa + scale * n.z);
      break;
    }
    case InversionMethod::stehfest:
      for (int k = 1; k <= cfg.nodes; ++k) out.emplace_back(abscissa + k * kLn2 / t, 0.0);
      break;
    case InversionMethod::euler: {
      const double a = cfg.nodes * kLn10 / 3.0;
      for (int k = 0; k <= 2 * cfg.nodes; ++k) out.push_back(abscissa + cdouble(a, kPi * k) / t);
      break;
    }
  }
  return out;
}

double laplace_invert(const Transform& F, double t, const InversionConfig& cfg,
                      const Singularities& sing) {
  const auto nodes = inversion_nodes(t, cfg, sing.abscissa);
  check_nodes(nodes, sing, t);
  const double sigma = sing.abscissa;

  double result = 0.0;
  switch (cfg.method) {
    case InversionMethod::talbot: {
      const double scale = talbot_mu(cfg) / t;
      const auto geometry = talbot_geometry(cfg.nodes);
      double sum = 0.0;
      for (std::size_t k = 0; k < geometry.size(); ++k) {
        const cdouble z = nodes[k];
        const cdouble w = std::exp(z * t) * F(z) * (scale * geometry[k].dz);
        sum += geometry[k].weight * w.imag();
      }
      result = sum / cfg.nodes;
      break;
    }
    case InversionMethod::stehfest: {
      const auto& v = stehfest_weights(cfg.nodes);
      long double sum = 0.0L;
      for (int k = 0; k < cfg.nodes; ++k) {
        sum += v[k] * static_cast<long double>(F(nodes[k]).real());
      }
      result = static_cast<double>(sum) * kLn2 / t * std::exp(sigma * t);
      break;
    }
    case InversionMethod::euler: {
      const auto eta = euler_weights(cfg.nodes);
      double sum = 0.0;
      for (std::size_t k = 0; k < eta.size(); ++k) sum += eta[k] * F(nodes[k]).real();
      result = std::pow(10.0, cfg.nodes / 3.0) / t * sum * std::exp(sigma * t);
      break;
    }
  }
  if (!std::isfinite(result)) {
    std::ostringstream msg;
    msg << "laplace_invert: non-finite result at t = " << t << " with " << cfg.describe();
    throw OverflowError(msg.str());
  }
  return result;
}

cdouble laplace_forward_quadrature(const SourceProfile& profile, cdouble p, double rel_tol) {
  if (!(p.real() > 0.0)) throw DomainError("laplace_forward: requires Re p > 0");
  // exp(-45) ~ 3e-20 bounds the discarded tail relative to sup |v0|.
  double upper = 45.0 / p.real();
  if (profile.horizon > 0.0) upper = std::min(upper, profile.horizon);
  const auto pts = quad::breakpoints(0.0, upper, profile.breakpoints);
  const auto& f = profile.evaluate;
  auto integrand = [&](double s) { return f(s) * std::exp(-p * s); };
  quad::Tolerance tol;
  tol.rel = rel_tol;
  tol.abs = std::numeric_limits<double>::min();
  tol.max_intervals = 20000;
  const auto r = quad::integrate<cdouble>(integrand, pts, tol);
  if (r.error > 1e-10 * std::abs(r.value) && r.error > tol.abs) {
    std::ostringstream msg;
    msg << "laplace_forward: quadrature for profile '" << profile.name << "' at p = " << p
        << " reached only " << r.error << " absolute error";
    throw ConvergenceError(msg.str(), r.error);
  }
  return r.value;
}

cdouble laplace_forward(const SourceProfile& profile, cdouble p) {
  if (!(p.real() > 0.0)) throw DomainError("laplace_forward: requires Re p > 0");
  if (profile.has_transform()) return profile.transform(p);
  return laplace_forward_quadrature(profile, p);
}

}  // namespace hypervolt

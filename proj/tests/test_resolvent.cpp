#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstdlib>

#include "hypervolt/error.hpp"
#include "hypervolt/resolvent.hpp"
#include "hypervolt/volterra_direct.hpp"
#include "oracles.hpp"

using hypervolt::cdouble;
using hypervolt::InversionConfig;

namespace {

const double kC = -static_cast<double>(oracle::gamma(-0.25L));  // 4 Gamma(3/4)

double max_rel(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, oracle::rel_err(a[i], b[i]));
  return m;
}

}  // namespace

TEST_SUITE("resolvent") {
  TEST_CASE("multiplier reference values") {
    const cdouble m = hypervolt::multiplier(-0.25, 1.0);
    CHECK(oracle::rel_err(m.real(), 1.0 / (1.0 + kC)) < 1e-14);
    CHECK(m.real() == doctest::Approx(0.169443).epsilon(1e-5));
    CHECK(std::abs(hypervolt::multiplier(1.0, 2.0) - 2.0) < 1e-15);
    CHECK_THROWS_AS(hypervolt::multiplier(1.0, 1.0), hypervolt::PoleError);
    CHECK_THROWS_AS(hypervolt::multiplier(-1.0, 1.0), hypervolt::PoleError);
  }

  TEST_CASE("multiplier algebra on inversion nodes") {
    for (double lambda : {-0.25, 0.5, 1.0}) {
      const hypervolt::ResolventMultiplier m(lambda);
      const double g = static_cast<double>(oracle::gamma(static_cast<long double>(lambda)));
      const auto sing = m.singularities();
      for (double t : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
        for (const auto& cfg : {InversionConfig::talbot(), InversionConfig::euler()}) {
          for (const cdouble p : hypervolt::inversion_nodes(t, cfg, sing.abscissa)) {
            const cdouble gp = g * std::pow(p, -lambda);
            const cdouble den = 1.0 - gp;
            // rounding in den is amplified by |gp| / |den|
            const double cond = 1.0 + std::abs(gp) / std::abs(den);
            CHECK(std::abs(m(p) * den - 1.0) <= 1e-14 * cond);
          }
        }
      }
    }
  }

  TEST_CASE("no zero of 1 + c p^(1/4) near the contour") {
    const hypervolt::ResolventMultiplier m(-0.25);
    CHECK_FALSE(m.pole().has_value());
    for (double t : oracle::geometric(1e-4, 1e5, 30)) {
      for (const cdouble p : hypervolt::inversion_nodes(t, InversionConfig::talbot())) {
        CHECK(std::abs(m.denominator(p)) > 0.5);
      }
    }
  }

  TEST_CASE("real pole for lambda > 0") {
    CHECK(*hypervolt::ResolventMultiplier(0.5).pole() == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(*hypervolt::ResolventMultiplier(1.0).pole() == doctest::Approx(1.0));
    CHECK(hypervolt::ResolventMultiplier(0.75).singularities().abscissa > 0.0);
  }

  TEST_CASE("supported exponents") {
    CHECK(hypervolt::inversion_supports(-0.25));
    CHECK(hypervolt::inversion_supports(1.5));
    CHECK_FALSE(hypervolt::inversion_supports(2.5));
    CHECK_FALSE(hypervolt::inversion_supports(-1.5));
    CHECK(hypervolt::resolvent_supports(1.0));
    CHECK(hypervolt::resolvent_supports(-0.25));
    CHECK_FALSE(hypervolt::resolvent_supports(-0.5));
    CHECK_FALSE(hypervolt::resolvent_supports(1.5));
    CHECK_THROWS_AS(hypervolt::resolvent_kernel(1.5, 1.0), hypervolt::DomainError);
    CHECK_THROWS_AS(hypervolt::resolvent_kernel(-0.5, 1.0), hypervolt::DomainError);
    const auto& e = hypervolt::find_profile("exp");
    CHECK_THROWS_AS(hypervolt::solve_via_inversion(e, 2.5, {1.0}), hypervolt::DomainError);
    CHECK_THROWS_AS(hypervolt::solve_via_inversion(e, -1.0, {1.0}), hypervolt::PoleError);
    CHECK_THROWS_AS(hypervolt::solve_via_resolvent(e, 0.0, {1.0}), hypervolt::PoleError);
  }

  TEST_CASE("resolvent kernel values") {
    CHECK(hypervolt::resolvent_kernel(1.0, 1.0) == doctest::Approx(M_E).epsilon(1e-14));
    const double lead = 1.0 / (kC * static_cast<double>(oracle::gamma(0.25L)));
    CHECK(lead == doctest::Approx(0.0562708).epsilon(1e-6));
    const double t = 1e-16;
    CHECK(oracle::rel_err(hypervolt::resolvent_kernel(-0.25, t) * std::pow(t, 0.75), lead) < 1e-4);
    CHECK_THROWS_AS(hypervolt::resolvent_kernel(-0.25, 0.0), hypervolt::DomainError);
  }

  TEST_CASE("transform of the resolvent kernel matches the multiplier") {
    using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
    {
      // lambda = -1/4, t = u^4: integrand 4 u^3 R(u^4) e^{-p u^4} is smooth.
      const hypervolt::ResolventKernel r(-0.25);
      const double p = 2.0;
      auto f = [&](double u) {
        if (u == 0.0) return 4.0 * r.reduced(0.0);
        return 4.0 * u * u * u * r(std::pow(u, 4.0)) * std::exp(-p * std::pow(u, 4.0));
      };
      const double q = gk::integrate(f, 0.0, std::pow(45.0 / p, 0.25), 15, 1e-13);
      CHECK(oracle::rel_err(q, 1.0 / (1.0 + kC * std::pow(p, 0.25))) < 1e-5);
    }
    {
      // lambda = 1/2, t = u^2; L(R) = M - 1 beyond the pole at pi.
      const hypervolt::ResolventKernel r(0.5);
      const double p = 6.0;
      auto f = [&](double u) {
        if (u == 0.0) return 2.0 * r.reduced(0.0);
        return 2.0 * u * r(u * u) * std::exp(-p * u * u);
      };
      const double q = gk::integrate(f, 0.0, std::sqrt(45.0 / (p - M_PI)), 15, 1e-13);
      const double want = (hypervolt::multiplier(0.5, p) - 1.0).real();
      CHECK(oracle::rel_err(q, want) < 1e-8);
    }
  }

  TEST_CASE("lambda = 1 reproduces cosh") {
    const auto& e = hypervolt::find_profile("exp");
    const std::vector<double> ts{0.1, 1.0, 2.5, 5.0};
    const auto inv = hypervolt::solve_via_inversion(e, 1.0, ts);
    const auto res = hypervolt::solve_via_resolvent(e, 1.0, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      CHECK(oracle::rel_err(inv.values[i], std::cosh(ts[i])) < 1e-10);
      CHECK(oracle::rel_err(res.values[i], std::cosh(ts[i])) < 1e-10);
      CHECK(inv.error_estimates[i] >= 0.0);
    }
    CHECK(inv.route == hypervolt::Route::inversion);
    CHECK(res.route == hypervolt::Route::resolvent);
    CHECK(inv.values[1] == doctest::Approx(1.54308063481524).epsilon(1e-13));
  }

  TEST_CASE("zero forcing gives zero") {
    const auto z = hypervolt::zero_profile();
    const std::vector<double> ts{0.1, 1.0, 10.0};
    for (double v : hypervolt::solve_via_resolvent(z, -0.25, ts).values) CHECK(v == 0.0);
    for (double v : hypervolt::solve_via_inversion(z, -0.25, ts).values) CHECK(v == 0.0);
  }

  TEST_CASE("routes agree on the reference cases") {
    const auto& e = hypervolt::find_profile("exp");
    {
      const std::vector<double> ts{0.1, 1.0, 10.0};
      const auto a = hypervolt::solve_via_inversion(e, -0.25, ts);
      const auto b = hypervolt::solve_via_resolvent(e, -0.25, ts);
      CHECK(max_rel(a.values, b.values) < 1e-6);
    }
    {
      const std::vector<double> ts{0.5, 1.0, 2.0, 4.0};
      const auto a = hypervolt::solve_via_inversion(e, 0.5, ts);
      const auto b = hypervolt::solve_via_resolvent(e, 0.5, ts);
      CHECK(max_rel(a.values, b.values) < 1e-6);
    }
    {
      hypervolt::StepperConfig cfg;
      cfg.step = 1e-3;
      cfg.horizon = 2.0;
      const auto d = hypervolt::solve_direct_at(e, 0.5, {2.0}, cfg);
      const auto a = hypervolt::solve_via_inversion(e, 0.5, {2.0});
      CHECK(oracle::rel_err(d.values[0], a.values[0]) < 1e-4);
    }
  }

  TEST_CASE("route agreement over the catalog on [0.01, 100]") {
    const auto ts = oracle::geometric(0.01, 100.0, 25);
    for (double lambda : {0.5, 1.0, -0.25}) {
      for (const auto& prof : hypervolt::catalog()) {
        const auto a = hypervolt::solve_via_inversion(prof, lambda, ts);
        const auto b = hypervolt::solve_via_resolvent(prof, lambda, ts);
        CHECK_MESSAGE(max_rel(a.values, b.values) < 1e-6, prof.name << " lambda=" << lambda);
      }
    }
  }

  TEST_CASE("other inversion methods on the hyper-singular case") {
    const auto& e = hypervolt::find_profile("exp");
    const std::vector<double> ts{0.1, 1.0, 10.0};
    const auto ref = hypervolt::solve_via_resolvent(e, -0.25, ts);
    const auto eul = hypervolt::solve_via_inversion(e, -0.25, ts, InversionConfig::euler());
    const auto ste = hypervolt::solve_via_inversion(e, -0.25, ts, InversionConfig::stehfest());
    CHECK(max_rel(eul.values, ref.values) < 1e-6);
    CHECK(max_rel(ste.values, ref.values) < 1e-3);
  }

  TEST_CASE("linearity") {
    const auto& p1 = hypervolt::find_profile("exp");
    const auto& p2 = hypervolt::find_profile("gaussian_bump");
    const auto mix = hypervolt::combine(2.0, p1, 3.0, p2);
    const std::vector<double> ts{0.1, 1.0, 5.0};
    for (double lambda : {-0.25, 0.5}) {
      const auto a = hypervolt::solve_via_resolvent(p1, lambda, ts);
      const auto b = hypervolt::solve_via_resolvent(p2, lambda, ts);
      const auto c = hypervolt::solve_via_resolvent(mix, lambda, ts);
      const auto ai = hypervolt::solve_via_inversion(p1, lambda, ts);
      const auto bi = hypervolt::solve_via_inversion(p2, lambda, ts);
      const auto ci = hypervolt::solve_via_inversion(mix, lambda, ts);
      for (std::size_t i = 0; i < ts.size(); ++i) {
        CHECK(oracle::rel_err(c.values[i], 2.0 * a.values[i] + 3.0 * b.values[i]) < 1e-10);
        CHECK(oracle::rel_err(ci.values[i], 2.0 * ai.values[i] + 3.0 * bi.values[i]) < 1e-10);
      }
    }
  }

  TEST_CASE("classical solutions satisfy the equation") {
    boost::math::quadrature::tanh_sinh<double> ts;
    const auto& e = hypervolt::find_profile("exp");
    for (double lambda : {0.5, 0.75}) {
      const auto v = hypervolt::evaluable_solution(hypervolt::Route::resolvent, e, lambda);
      for (double t : {0.5, 1.0, 2.0}) {
        // s = t - u^2 removes the endpoint singularity
        const double conv = ts.integrate(
            [&](double u) { return 2.0 * std::pow(u, 2.0 * lambda - 1.0) * v(t - u * u); }, 0.0,
            std::sqrt(t), 1e-12);
        CHECK(std::abs(v(t) - e.evaluate(t) - conv) < 1e-5);
      }
    }
  }

  TEST_CASE("grid validation") {
    const auto& e = hypervolt::find_profile("exp");
    CHECK_THROWS_AS(hypervolt::solve_via_resolvent(e, -0.25, {}), hypervolt::DomainError);
    CHECK_THROWS_AS(hypervolt::solve_via_resolvent(e, -0.25, {0.0, 1.0}), hypervolt::DomainError);
    CHECK_THROWS_AS(hypervolt::solve_via_resolvent(e, -0.25, {2.0, 1.0}), hypervolt::DomainError);
    CHECK_THROWS_AS(hypervolt::solve_via_inversion(e, -0.25, {1.0, 1.0}), hypervolt::DomainError);
    hypervolt::SolutionGrid g;
    g.times = {1.0};
    g.values = {std::nan("")};
    CHECK_THROWS_AS(g.validate(), hypervolt::OverflowError);
  }

  TEST_CASE("results do not depend on the thread count") {
    const auto& e = hypervolt::find_profile("gaussian_bump");
    const auto ts = oracle::geometric(0.05, 50.0, 16);
    setenv("HYPERVOLT_THREADS", "1", 1);
    const auto a = hypervolt::solve_via_inversion(e, -0.25, ts);
    setenv("HYPERVOLT_THREADS", "7", 1);
    const auto b = hypervolt::solve_via_inversion(e, -0.25, ts);
    unsetenv("HYPERVOLT_THREADS");
    CHECK(a.values == b.values);
    CHECK(a.error_estimates == b.error_estimates);
  }

  TEST_CASE("route names") {
    CHECK(hypervolt::parse_route("direct") == hypervolt::Route::direct);
    CHECK(hypervolt::to_string(hypervolt::Route::resolvent) == "resolvent");
    CHECK_THROWS_AS(hypervolt::parse_route("all"), hypervolt::InputError);
  }
}

#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "hypervolt/error.hpp"
#include "hypervolt/kernel.hpp"
#include "oracles.hpp"

using hypervolt::cdouble;
using hypervolt::PowerKernel;

TEST_SUITE("kernel") {
  TEST_CASE("admissibility") {
    for (double bad : {0.0, -1.0, -2.0, -1.0 + 1e-10, 5e-10}) {
      CHECK_THROWS_AS(PowerKernel{bad}, hypervolt::PoleError);
    }
    CHECK_THROWS_AS(PowerKernel{std::nan("")}, hypervolt::DomainError);
    CHECK_NOTHROW(PowerKernel{-1.0 + 1e-8});
    CHECK_NOTHROW(PowerKernel{-0.25});
  }

  TEST_CASE("pointwise kernel") {
    const PowerKernel k(0.5);
    CHECK(k(4.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(k(0.0) == 0.0);
    CHECK(k(-1.0) == 0.0);
    const PowerKernel phi(-0.25, true);
    CHECK(phi(1.0) == doctest::Approx(1.0 / static_cast<double>(oracle::gamma(-0.25L))));
  }

  TEST_CASE("laplace symbol reference values") {
    CHECK(std::abs(hypervolt::laplace_symbol(PowerKernel(1.0), 3.0) - 1.0 / 3.0) < 1e-16);
    const cdouble s = hypervolt::laplace_symbol(PowerKernel(-0.25), 1.0);
    CHECK(s.real() == doctest::Approx(-4.90166680986071).epsilon(1e-13));
    CHECK(s.imag() == 0.0);
    const double want = static_cast<double>(oracle::gamma(0.5L)) / 2.0;
    const cdouble h = hypervolt::laplace_symbol(PowerKernel(0.5), 4.0);
    CHECK(oracle::rel_err(h.real(), want) < 1e-15);
    CHECK(h.real() == doctest::Approx(0.886226925452758).epsilon(1e-14));
  }

  TEST_CASE("laplace symbol requires Re p > 0") {
    CHECK_THROWS_AS(hypervolt::laplace_symbol(PowerKernel(0.5), cdouble(0.0, 1.0)),
                    hypervolt::DomainError);
    CHECK_THROWS_AS(hypervolt::laplace_symbol(PowerKernel(0.5), -2.0), hypervolt::DomainError);
    CHECK_NOTHROW(hypervolt::laplace_symbol_cut_plane(PowerKernel(0.5), cdouble(-2.0, 0.5)));
    CHECK_THROWS_AS(hypervolt::laplace_symbol_cut_plane(PowerKernel(0.5), -2.0),
                    hypervolt::DomainError);
  }

  TEST_CASE("principal branch on the right half-plane") {
    const cdouble p(1.0, 1.0);
    const cdouble w = hypervolt::principal_power(p, 0.25);
    CHECK(std::arg(w) == doctest::Approx(M_PI / 16.0).epsilon(1e-14));
    CHECK(std::abs(w) == doctest::Approx(std::pow(2.0, 0.125)).epsilon(1e-14));
  }

  TEST_CASE("symbol agrees with quadrature for lambda > 0") {
    boost::math::quadrature::tanh_sinh<double> ts;
    for (double lambda : {0.25, 0.5, 0.75, 1.0, 1.5}) {
      const PowerKernel k(lambda);
      for (double p : {0.5, 1.0, 3.0, 10.0, 50.0}) {
        const double upper = 18.0 * std::log(10.0) / p;
        auto f = [&](double t) { return std::pow(t, lambda - 1.0) * std::exp(-p * t); };
        const double q = ts.integrate(f, 0.0, upper, 1e-14);
        const double s = hypervolt::laplace_symbol(k, p).real();
        CHECK(oracle::rel_err(s, q) < 1e-8);
      }
    }
  }

  TEST_CASE("finite-part primitive values") {
    CHECK(hypervolt::finite_part_primitive(PowerKernel(-0.25), 1.0) == doctest::Approx(-4.0));
    CHECK(hypervolt::finite_part_primitive(PowerKernel(-0.25), 16.0) == doctest::Approx(-2.0));
    CHECK(hypervolt::finite_part_primitive(PowerKernel(1.0), 2.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(hypervolt::finite_part_primitive(PowerKernel(0.5), 0.0),
                    hypervolt::DomainError);
  }

  TEST_CASE("finite-part primitive differentiates to the kernel") {
    for (double lambda : {-0.75, -0.25, 0.5, 1.0, 1.5}) {
      const PowerKernel k(lambda);
      for (double t : {0.5, 1.0, 2.0}) {
        const double h = 1e-5 * t;
        const double d = (hypervolt::finite_part_primitive(k, t + h) -
                          hypervolt::finite_part_primitive(k, t - h)) /
                         (2.0 * h);
        CHECK(oracle::rel_err(d, std::pow(t, lambda - 1.0)) <= 1e-6);
      }
    }
  }

  TEST_CASE("normalized symbol times gamma equals the plain symbol") {
    for (double lambda : {-0.75, -0.25, 0.5, 1.3}) {
      const PowerKernel plain(lambda);
      const PowerKernel norm(lambda, true);
      for (cdouble p : {cdouble(0.5, 0.0), cdouble(2.0, 3.0), cdouble(40.0, -7.0)}) {
        const cdouble a = hypervolt::laplace_symbol(norm, p) * plain.gamma_lambda();
        const cdouble b = hypervolt::laplace_symbol(plain, p);
        CHECK(std::abs(a - b) <= 1e-15 * std::abs(b));
      }
    }
  }
}

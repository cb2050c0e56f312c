#include "relaysec/specfun.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace relaysec;

TEST_SUITE("specfun") {
  TEST_CASE("reference values") {
    CHECK(expint_ei(-1.0) == doctest::Approx(-0.21938393439552).epsilon(1e-12));
    CHECK(expint_ei(-0.5) == doctest::Approx(-0.55977359477616).epsilon(1e-12));
    CHECK(exp_scaled_ei(1.0) == doctest::Approx(-0.59634736232319).epsilon(1e-12));
    CHECK(exp_scaled_ei(1e-6) == doctest::Approx(-13.2383).epsilon(1e-5));
  }

  TEST_CASE("Ei agrees with the quadrature oracle on a log grid") {
    for (double t = 1e-6; t <= 1e3; t *= 2.9) {
      const double expected = -std::exp(-t) * oracle::scaled_e1(t);
      CHECK(std::abs(expint_ei(-t) - expected) < 1e-10);
      CHECK(exp_scaled_ei(t) == doctest::Approx(-oracle::scaled_e1(t)).epsilon(1e-9));
    }
  }

  TEST_CASE("asymptotics and bounds") {
    CHECK(std::exp(50.0) * std::abs(expint_ei(-50.0)) == doctest::Approx(1.0 / 50.0).epsilon(0.03));
    CHECK(exp_scaled_ei(100.0) == doctest::Approx(-(1.0 / 100.0) * (1.0 - 1.0 / 100.0)).epsilon(0.01));
    for (double t = 1e-4; t <= 1e6; t *= 1.7) {
      const double v = exp_scaled_ei(t);
      CHECK(v < 0.0);
      CHECK(v > -1.0 / t);
    }
    CHECK(std::isfinite(exp_scaled_ei(1e6)));
  }

  TEST_CASE("series and continued fraction agree in the overlap band") {
    for (double t = 0.5; t <= 2.0; t += 0.05)
      CHECK(detail::e1_series(t) == doctest::Approx(detail::scaled_e1_fraction(t) * std::exp(-t)).epsilon(1e-13));
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(expint_ei(0.0), std::domain_error);
    CHECK_THROWS_AS(expint_ei(1.0), std::domain_error);
    CHECK_THROWS_AS(exp_scaled_ei(0.0), std::domain_error);
  }

  TEST_CASE("quadrature") {
    auto r = integrate([](double x) { return x; }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 0.5) < 1e-12);
    r = integrate([](double x) { return std::exp(-x); }, 0.0, 50.0);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 1.0) < 1e-10);
    r = integrate([](double x) { return std::sin(x) * std::sin(x); }, 0.0, 3.0 * M_PI);
    CHECK(r.value == doctest::Approx(1.5 * M_PI).epsilon(1e-12));
  }

  TEST_CASE("quadrature reports non-convergence") {
    const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-14, 1e-14, 3});
    CHECK_FALSE(r.converged);
    CHECK(r.abs_error > 0.0);
    CHECK(r.value == doctest::Approx(2.0).epsilon(0.1));
  }
}

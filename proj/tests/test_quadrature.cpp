#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "specenc/quadrature.hpp"
#include "specenc/specfun.hpp"

using namespace specenc;

TEST_CASE("finite interval: polynomial is exact, error honest") {
  auto r = quad::integrate([](double x) { return x * x * x - 2.0 * x + 1.0; }, -1.0, 3.0);
  // antiderivative x^4/4 - x^2 + x
  double exact = (81.0 / 4.0 - 9.0 + 3.0) - (0.25 - 1.0 - 1.0);
  CHECK(std::fabs(r.value - exact) < 1e-12);
  CHECK(r.converged);
}

TEST_CASE("half line: exponential moments reproduce gamma") {
  for (double nu : {1.0, 2.0, 3.5}) {
    for (double mu : {0.5, 1.0, 4.0}) {
      CAPTURE(nu);
      CAPTURE(mu);
      auto r = quad::integrate_half_line(
          [nu, mu](double x) { return x <= 0.0 ? 0.0 : std::pow(x, nu - 1.0) * std::exp(-mu * x); });
      double exact = std::pow(mu, -nu) * specfun::gamma_fn(nu).value;
      CHECK(std::fabs(r.value - exact) <= 1e-9 * exact);
      CHECK(r.abs_error <= 1e-8 * exact);
    }
  }
}

TEST_CASE("half line: algebraic decay") {
  auto r = quad::integrate_half_line([](double x) { return 1.0 / (1.0 + x * x); });
  CHECK(std::fabs(r.value - 2.0 * std::atan(1.0)) < 1e-10);
}

TEST_CASE("sharply peaked integrand") {
  double exact = std::sqrt(3.141592653589793 / 4000.0);
  auto r = quad::integrate([](double x) { return std::exp(-4000.0 * (x - 0.613) * (x - 0.613)); },
                           0.0, 1.0);
  CHECK(std::fabs(r.value - exact) < 1e-12);
}

TEST_CASE("integrable endpoint singularity") {
  // integral_0^1 x^{-1/2} dx = 2
  auto r = quad::integrate([](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; }, 0.0, 1.0,
                           1e-12, 1e-10);
  CHECK(std::fabs(r.value - 2.0) < 1e-8);
}

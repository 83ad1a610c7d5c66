#include <doctest.h>

#include <cmath>
#include <numbers>

#include "abc/errors.hpp"
#include "abc/gamma.hpp"
#include "abc/quadrature.hpp"

using namespace abc;

TEST_CASE("gamma agrees with the C library on a dense grid") {
  double worst = 0.0;
  for (int i = 1; i <= 3400; ++i) {
    const double x = -20.0 + i * 0.0573;  // avoids integer poles
    if (std::abs(x - std::round(x)) < 1e-9) continue;
    const double ref = std::tgamma(x);
    worst = std::max(worst, std::abs(special::gamma(x) - ref) / std::abs(ref));
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("integers and half-integers are exact or close to it") {
  CHECK(special::gamma(1.0) == 1.0);
  CHECK(special::gamma(6.0) == 120.0);
  CHECK(special::gamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
  CHECK(special::gamma(-0.5) == doctest::Approx(-2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("rgamma vanishes at the poles and gamma rejects them") {
  CHECK(special::rgamma(0.0) == 0.0);
  CHECK(special::rgamma(-3.0) == 0.0);
  CHECK_THROWS_AS(special::gamma(-2.0), DomainError);
  CHECK(special::rgamma(200.0) == 0.0);
}

TEST_CASE("log_gamma matches lgamma for large arguments") {
  for (double x : {0.1, 2.5, 30.0, 171.0, 400.0, 1e4}) {
    CHECK(special::log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
  }
}

TEST_CASE("adaptive Gauss-Kronrod handles an endpoint singularity") {
  // int_0^1 x^{-1/2} dx = 2
  const auto r = quad::integrate([](double x) { return x > 0 ? 1.0 / std::sqrt(x) : 0.0; }, 0.0, 1.0, 1e-12);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-11));
  const auto s = quad::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-14);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-14));
}

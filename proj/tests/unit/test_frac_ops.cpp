#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "abc/errors.hpp"
#include "abc/frac_ops.hpp"
#include "abc/mlf.hpp"
#include "abc/quadrature.hpp"

using namespace abc;

namespace {

TimeSeries random_series(const TimeGrid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(g.size());
  for (double& x : v) x = u(rng);
  return TimeSeries(g, v);
}

double max_abs_diff(const TimeSeries& a, const TimeSeries& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

// D(t^2) = c int_0^t 2 tau E_alpha(-gamma (t - tau)^alpha) dtau = 2 c t^2 E_{alpha,3}(-gamma t^alpha)
double abc_of_square(const AlphaContext& ctx, double t) {
  return 2.0 * ctx.derivative_scale() * t * t * mlf(ctx.alpha, 3.0, -ctx.gamma_rate * std::pow(t, ctx.alpha));
}

}  // namespace

TEST_CASE("alpha context") {
  const auto c = AlphaContext::make(0.5);
  CHECK(c.b_of_alpha == doctest::Approx(0.5 + 0.5 / std::sqrt(std::numbers::pi)).epsilon(1e-15));
  CHECK(c.b_of_alpha == doctest::Approx(0.78209479177387814).epsilon(1e-15));
  CHECK(c.gamma_rate == 1.0);
  CHECK(AlphaContext::make(1.0).b_of_alpha == 1.0);
  CHECK(AlphaContext::make(0.0).b_of_alpha == 1.0);
  for (double a = 0.01; a < 1.0; a += 0.01) CHECK(AlphaContext::make(a).b_of_alpha > 0.0);
  CHECK_THROWS_AS(AlphaContext::make(1.5), DomainError);
  CHECK_THROWS_AS(AlphaContext::make(-0.1), DomainError);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(TimeGrid(1.0, 1), GridError);
  CHECK_THROWS_AS(TimeGrid(0.0, 10), GridError);
  const TimeGrid g(1.0, 4);
  CHECK_THROWS_AS(TimeSeries(g, std::vector<double>(3)), GridError);
  const TimeSeries a(g), b(TimeGrid(2.0, 4));
  CHECK_THROWS_AS(a + b, GridError);
  CHECK_THROWS_AS(abc_derivative_left(a, AlphaContext::make(1.0)), DomainError);
  CHECK_THROWS_AS(abc_derivative_left(a, AlphaContext::make(0.0)), DomainError);
}

TEST_CASE("ABC derivative of constants vanishes exactly") {
  const TimeGrid g(2.0, 300);
  for (double a : {0.2, 0.5, 0.9}) {
    const auto ctx = AlphaContext::make(a);
    const TimeSeries u(g, 3.7);
    CHECK(sup_norm(abc_derivative_left(u, ctx)) == 0.0);
    CHECK(sup_norm(abc_derivative_right(u, ctx)) == 0.0);
  }
}

TEST_CASE("scheme is exact for linear functions") {
  const auto ctx = AlphaContext::make(0.5);
  const TimeGrid g(1.0, 1000);
  const auto d = abc_derivative_left(TimeSeries::sample(g, [](double t) { return t; }), ctx);
  CHECK(std::abs(d.back() - 0.869631131834349723) < 1e-12);  // (B/(1-alpha)) E_{0.5,2}(-1), mpmath
  double worst = 0.0;
  for (int j = 0; j <= 1000; ++j) {
    const double t = g.node(j);
    worst = std::max(worst, std::abs(d[j] - ctx.derivative_scale() * kernel_primitive(0.5, 1.0, t)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("closed form for t^2 agrees with quadrature of the defining integral") {
  for (double a : {0.3, 0.5, 0.8}) {
    const auto ctx = AlphaContext::make(a);
    for (double t : {0.25, 1.0, 1.7}) {
      auto integrand = [&](double tau) {
        return 2.0 * tau * mlf(a, 1.0, -ctx.gamma_rate * std::pow(t - tau, a));
      };
      const auto q = quad::integrate(integrand, 0.0, t, 1e-13);
      CHECK(std::abs(ctx.derivative_scale() * q.value - abc_of_square(ctx, t)) < 1e-11);
    }
  }
}

TEST_CASE("ABC derivative of t^2 converges at second order") {
  const auto ctx = AlphaContext::make(0.5);
  std::vector<double> err;
  for (int n : {50, 100, 200, 400}) {
    const TimeGrid g(1.0, n);
    const auto d = abc_derivative_left(TimeSeries::sample(g, [](double t) { return t * t; }), ctx);
    double e = 0.0;
    for (int j = 0; j <= n; ++j) e = std::max(e, std::abs(d[j] - abc_of_square(ctx, g.node(j))));
    err.push_back(e);
  }
  for (std::size_t i = 1; i < err.size(); ++i) CHECK(std::log2(err[i - 1] / err[i]) >= 1.9);
}

TEST_CASE("right derivative routes through reversal") {
  std::mt19937_64 rng(7);
  const TimeGrid g(1.3, 200);
  const auto ctx = AlphaContext::make(0.6);
  for (int trial = 0; trial < 5; ++trial) {
    const auto u = random_series(g, rng);
    const auto right = abc_derivative_right(u, ctx);
    const auto left_rev = abc_derivative_left(u.reversed(), ctx);
    for (std::size_t j = 0; j < u.size(); ++j) CHECK(right[j] + left_rev[u.size() - 1 - j] == 0.0);
  }
  // u = T - t: right derivative is minus the left derivative of t read backwards
  const auto right = abc_derivative_right(TimeSeries::sample(g, [&](double t) { return g.t_final() - t; }), ctx);
  const auto left = abc_derivative_left(TimeSeries::sample(g, [](double t) { return t; }), ctx);
  CHECK(max_abs_diff(right, -1.0 * left.reversed()) < 1e-15);
  CHECK(right.back() == 0.0);
}

TEST_CASE("operators are linear") {
  std::mt19937_64 rng(11);
  const TimeGrid g(1.0, 150);
  const auto ctx = AlphaContext::make(0.4);
  const auto u = random_series(g, rng), w = random_series(g, rng);
  const double a = 1.7, b = -0.3;
  const auto mix = a * u + b * w;
  CHECK(max_abs_diff(abc_derivative_left(mix, ctx), a * abc_derivative_left(u, ctx) + b * abc_derivative_left(w, ctx)) <
        1e-12);
  CHECK(max_abs_diff(abc_derivative_right(mix, ctx),
                     a * abc_derivative_right(u, ctx) + b * abc_derivative_right(w, ctx)) < 1e-12);
  CHECK(max_abs_diff(abr_derivative_left(mix, ctx), a * abr_derivative_left(u, ctx) + b * abr_derivative_left(w, ctx)) <
        1e-12);
  CHECK(max_abs_diff(ab_integral(mix, ctx), a * ab_integral(u, ctx) + b * ab_integral(w, ctx)) < 1e-13);
}

TEST_CASE("ABR minus ABC is the initial-value term") {
  std::mt19937_64 rng(3);
  const TimeGrid g(1.0, 120);
  const auto ctx = AlphaContext::make(0.7);
  const auto u = random_series(g, rng);
  const auto diff = abr_derivative_left(u, ctx) - abc_derivative_left(u, ctx);
  for (int j = 0; j <= 120; ++j) {
    const double expect =
        ctx.derivative_scale() * u[0] * mlf(0.7, 1.0, -ctx.gamma_rate * std::pow(g.node(j), 0.7));
    CHECK(std::abs(diff[j] - expect) < 1e-12);
  }
  auto v = u;
  v[0] = 0.0;
  CHECK(max_abs_diff(abr_derivative_left(v, ctx), abc_derivative_left(v, ctx)) == 0.0);
  CHECK(sup_norm(abr_derivative_left(TimeSeries(g), ctx)) == 0.0);
}

TEST_CASE("ABR of one is the scaled kernel, checked by differentiating the convolution") {
  const auto ctx = AlphaContext::make(0.5);
  const TimeGrid g(1.0, 10);
  const auto d = abr_derivative_left(TimeSeries(g, 1.0), ctx);
  for (int j = 1; j <= 10; ++j) {
    const double t = g.node(j), h = 1e-4;
    auto conv = [&](double s) {
      return quad::integrate([&](double tau) { return mlf(0.5, 1.0, -std::pow(s - tau, 0.5)); }, 0.0, s, 1e-14).value;
    };
    const double fd = ctx.derivative_scale() * (conv(t + h) - conv(t - h)) / (2 * h);
    CHECK(std::abs(d[j] - fd) < 1e-7);
  }
}

TEST_CASE("AB integral endpoints in alpha") {
  std::mt19937_64 rng(5);
  const TimeGrid g(2.0, 64);
  const auto u = random_series(g, rng);
  CHECK(max_abs_diff(ab_integral(u, AlphaContext::make(0.0)), u) == 0.0);
  const auto cum = ab_integral(TimeSeries::sample(g, [](double t) { return std::cos(t); }), AlphaContext::make(1.0));
  CHECK(std::abs(cum.back() - std::sin(2.0)) < 1e-3);
  const auto lin = ab_integral(TimeSeries::sample(g, [](double t) { return t; }), AlphaContext::make(1.0));
  CHECK(std::abs(lin.back() - 2.0) < 1e-14);
}

TEST_CASE("AB integral is exact on linear data") {
  // I(t) = ((1-a)/B) t + (a/B) t^{1+a}/Gamma(2+a)
  const auto ctx = AlphaContext::make(0.35);
  const TimeGrid g(1.5, 40);
  const auto out = ab_integral(TimeSeries::sample(g, [](double t) { return t; }), ctx);
  for (int j = 0; j <= 40; ++j) {
    const double t = g.node(j);
    const double expect = ((1 - 0.35) * t + 0.35 * std::pow(t, 1.35) / std::tgamma(2.35)) / ctx.b_of_alpha;
    CHECK(std::abs(out[j] - expect) < 1e-14);
  }
}

TEST_CASE("AB integral inverts the ABC derivative") {
  const auto ctx = AlphaContext::make(0.5);
  std::vector<double> err;
  for (int n : {100, 200, 400}) {
    const TimeGrid g(1.0, n);
    const auto u = TimeSeries::sample(g, [](double t) { return t * t + 0.5; });
    const auto back = ab_integral(abc_derivative_left(u, ctx), ctx);
    double e = 0.0;
    for (int j = 0; j <= n; ++j) e = std::max(e, std::abs(back[j] - (u[j] - u[0])));
    err.push_back(e);
  }
  for (std::size_t i = 1; i < err.size(); ++i) CHECK(std::log2(err[i - 1] / err[i]) >= 1.5);
}

TEST_CASE("near alpha = 1 the derivative of sin approaches cos away from t = 0") {
  // D(sin) = c int_0^t cos(tau) E(-gamma (t-tau)^alpha) dtau; with gamma = 999 the
  // kernel decays within a layer of width ~1e-3, so d(t) ~ cos(t) - e^{-999 t}-type transient.
  const auto ctx = AlphaContext::make(0.999);
  const TimeGrid g(1.0, 1000);
  const auto d = abc_derivative_left(TimeSeries::sample(g, [](double t) { return std::sin(t); }), ctx);
  double interior = 0.0, full = 0.0;
  for (int j = 0; j <= 1000; ++j) {
    const double e = std::abs(d[j] - std::cos(g.node(j)));
    full = std::max(full, e);
    if (g.node(j) >= 0.01) interior = std::max(interior, e);
  }
  MESSAGE("sup |D sin - cos| on [0,1] = " << full << ", on [0.01,1] = " << interior);
  CHECK(interior < 0.02);
}

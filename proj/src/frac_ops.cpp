#include "abc/frac_ops.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "abc/errors.hpp"
#include "abc/gamma.hpp"
#include "abc/mlf.hpp"

namespace abc {
namespace {

void require_derivative_order(const AlphaContext& ctx, const char* where) {
  if (!(ctx.alpha > 0.0 && ctx.alpha < 1.0))
    throw DomainError(std::string(where) + ": alpha must lie in (0, 1), got " + std::to_string(ctx.alpha));
}

}  // namespace

AlphaContext AlphaContext::make(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0)
    throw DomainError("AlphaContext: alpha must lie in [0, 1], got " + std::to_string(alpha));
  AlphaContext ctx;
  ctx.alpha = alpha;
  // alpha / Gamma(alpha) = alpha^2 / Gamma(alpha + 1) -> 0 as alpha -> 0
  ctx.b_of_alpha = (1.0 - alpha) + alpha * alpha * special::rgamma(alpha + 1.0);
  ctx.gamma_rate = alpha < 1.0 ? alpha / (1.0 - alpha) : std::numeric_limits<double>::quiet_NaN();
  return ctx;
}

AbcKernelTable abc_kernel_table(const AlphaContext& ctx, const TimeGrid& grid) {
  require_derivative_order(ctx, "abc_kernel_table");
  const int n = grid.n_steps();
  const double dt = grid.dt();
  const double scale = ctx.derivative_scale();
  AbcKernelTable table;
  table.dt = dt;
  table.increments.resize(n);
  double prev = 0.0;
  for (int q = 0; q < n; ++q) {
    const double next = kernel_primitive(ctx.alpha, ctx.gamma_rate, (q + 1) * dt);
    table.increments[q] = scale * (next - prev);
    prev = next;
  }
  return table;
}

TimeSeries abc_derivative_left(const TimeSeries& u, const AbcKernelTable& table) {
  const int n = u.grid().n_steps();
  if (table.increments.size() != static_cast<std::size_t>(n) || table.dt != u.grid().dt())
    throw GridError("abc_derivative_left: kernel table built for a different grid");
  std::vector<double> slope(n);
  for (int m = 0; m < n; ++m) slope[m] = (u[m + 1] - u[m]) / table.dt;
  TimeSeries d(u.grid());
  const double* inc = table.increments.data();
  for (int j = 1; j <= n; ++j) {
    double s = 0.0;
    for (int m = 0; m < j; ++m) s += slope[m] * inc[j - 1 - m];
    d[j] = s;
  }
  return d;
}

TimeSeries abc_derivative_left(const TimeSeries& u, const AlphaContext& ctx) {
  return abc_derivative_left(u, abc_kernel_table(ctx, u.grid()));
}

TimeSeries abc_derivative_right(const TimeSeries& u, const AbcKernelTable& table) {
  TimeSeries d = abc_derivative_left(u.reversed(), table).reversed();
  d *= -1.0;
  return d;
}

TimeSeries abc_derivative_right(const TimeSeries& u, const AlphaContext& ctx) {
  return abc_derivative_right(u, abc_kernel_table(ctx, u.grid()));
}

TimeSeries abr_derivative_left(const TimeSeries& u, const AlphaContext& ctx) {
  TimeSeries d = abc_derivative_left(u, ctx);
  const double c = ctx.derivative_scale() * u[0];
  if (c != 0.0) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      const double t = u.grid().node(static_cast<int>(j));
      d[j] += c * mlf(ctx.alpha, 1.0, -ctx.gamma_rate * std::pow(t, ctx.alpha));
    }
  }
  return d;
}

ConvolutionWeights convolution_weights(double alpha, double rate, const TimeGrid& grid) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("convolution_weights: alpha must lie in (0, 1]");
  if (!std::isfinite(rate) || rate < 0.0) throw DomainError("convolution_weights: rate must be non-negative");
  const int n = grid.n_steps();
  const double dt = grid.dt();
  std::vector<double> g(n + 1), h(n + 1);
  for (int p = 0; p <= n; ++p) {
    const double s = p * dt;
    if (p == 0) {
      g[p] = h[p] = 0.0;
      continue;
    }
    const double sa = std::pow(s, alpha);
    const double z = -rate * sa;
    g[p] = sa * mlf(alpha, alpha + 1.0, z);
    h[p] = s * sa * mlf(alpha, alpha + 2.0, z);
  }
  ConvolutionWeights w;
  w.alpha = alpha;
  w.rate = rate;
  w.dt = dt;
  w.upper.resize(n);
  w.lower.resize(n);
  for (int p = 0; p < n; ++p) {
    const double mean = (h[p + 1] - h[p]) / dt;
    w.upper[p] = mean - g[p];
    w.lower[p] = g[p + 1] - mean;
  }
  return w;
}

TimeSeries apply_convolution(const ConvolutionWeights& w, const TimeSeries& f) {
  const int n = f.grid().n_steps();
  if (w.upper.size() != static_cast<std::size_t>(n) || w.dt != f.grid().dt())
    throw GridError("apply_convolution: weights built for a different grid");
  TimeSeries c(f.grid());
  const double* up = w.upper.data();
  const double* lo = w.lower.data();
  const double* fv = f.values().data();
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int p = 0; p < k; ++p) s += up[p] * fv[k - p] + lo[p] * fv[k - p - 1];
    c[k] = s;
  }
  return c;
}

TimeSeries ab_integral(const TimeSeries& u, const AlphaContext& ctx) {
  const double a = ctx.alpha;
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError("ab_integral: alpha must lie in [0, 1]");
  if (a == 0.0) return u;
  if (a == 1.0) {
    TimeSeries out(u.grid());
    const double dt = u.grid().dt();
    for (std::size_t j = 1; j < u.size(); ++j) out[j] = out[j - 1] + 0.5 * dt * (u[j - 1] + u[j]);
    return out;
  }
  const TimeSeries rl = apply_convolution(convolution_weights(a, 0.0, u.grid()), u);
  TimeSeries out(u.grid());
  const double local = (1.0 - a) / ctx.b_of_alpha;
  const double memory = a / ctx.b_of_alpha;
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = local * u[j] + memory * rl[j];
  return out;
}

}  // namespace abc

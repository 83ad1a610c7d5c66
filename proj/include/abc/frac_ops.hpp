#pragma once

#include <vector>

#include "abc/time_series.hpp"

namespace abc {

/// Fractional order with the constants of the Atangana-Baleanu operators.
struct AlphaContext {
  double alpha = 0.5;
  double b_of_alpha = 0.0;  ///< B(alpha) = (1 - alpha) + alpha / Gamma(alpha)
  double gamma_rate = 0.0;  ///< alpha / (1 - alpha); NaN at alpha = 1

  /// Accepts alpha in [0, 1]; the derivatives further require alpha < 1.
  static AlphaContext make(double alpha);

  /// B(alpha) / (1 - alpha), the prefactor of the ABC and ABR derivatives.
  double derivative_scale() const { return b_of_alpha / (1.0 - alpha); }
};

/// Increments Delta P_q = P((q+1) dt) - P(q dt) of the kernel primitive
/// P(s) = s E_{alpha,2}(-gamma s^alpha), already scaled by B/(1 - alpha).
/// Reusable across every series on the same grid.
struct AbcKernelTable {
  double dt = 0.0;
  std::vector<double> increments;
};

AbcKernelTable abc_kernel_table(const AlphaContext& ctx, const TimeGrid& grid);

/// Left ABC derivative of a piecewise-linear series with the kernel integrated exactly:
///   d_j = sum_{m<j} (u_{m+1} - u_m)/dt * Delta P_{j-1-m},  d_0 = 0.
TimeSeries abc_derivative_left(const TimeSeries& u, const AlphaContext& ctx);
TimeSeries abc_derivative_left(const TimeSeries& u, const AbcKernelTable& table);

/// Right ABC derivative at base T, routed through the reversal identity
/// (D_T u)(t) = -(D_0 u~)(T - t) with u~(t) = u(T - t).
TimeSeries abc_derivative_right(const TimeSeries& u, const AlphaContext& ctx);
TimeSeries abc_derivative_right(const TimeSeries& u, const AbcKernelTable& table);

/// ABR derivative: ABC plus B/(1 - alpha) u(0) E_alpha(-gamma t^alpha).
TimeSeries abr_derivative_left(const TimeSeries& u, const AlphaContext& ctx);

/// Product-integration weights for
///   C(t_n) = int_0^{t_n} s^{alpha-1} E_{alpha,alpha}(-rate s^alpha) f(t_n - s) ds
/// with f piecewise linear. On cell p, [p dt, (p+1) dt], `upper[p]` multiplies
/// f_{n-p} and `lower[p]` multiplies f_{n-p-1}. Built from the exact primitives
///   G(s) = s^alpha E_{alpha,alpha+1}(-rate s^alpha),  H(s) = s^{alpha+1} E_{alpha,alpha+2}(-rate s^alpha).
/// rate = 0 gives the Riemann-Liouville kernel s^{alpha-1}/Gamma(alpha).
struct ConvolutionWeights {
  double alpha = 0.0;
  double rate = 0.0;
  double dt = 0.0;
  std::vector<double> upper;
  std::vector<double> lower;
};

ConvolutionWeights convolution_weights(double alpha, double rate, const TimeGrid& grid);

/// Applies the weights; the result has C(0) = 0.
TimeSeries apply_convolution(const ConvolutionWeights& w, const TimeSeries& f);

/// AB fractional integral ((1 - alpha)/B) u + (alpha/(B Gamma(alpha))) int_0^t (t - s)^{alpha-1} u(s) ds.
/// alpha = 0 returns u, alpha = 1 the cumulative trapezoid integral.
TimeSeries ab_integral(const TimeSeries& u, const AlphaContext& ctx);

}  // namespace abc

#pragma once

#include <string>
#include <vector>

#include "abc/field.hpp"
#include "abc/frac_ops.hpp"
#include "abc/spectral.hpp"
#include "abc/time_series.hpp"

namespace abc {

/// Which convolution coefficient multiplies the Mittag-Leffler memory term.
/// `derived` is k_i = alpha zeta_i^2 / B(alpha), from the Laplace transform of
/// the modal equation. `printed` is
///   K_i = alpha zeta_i / (B Gamma(alpha)) + (1 - alpha) gamma_i zeta_i / B,
/// kept only to show that it misses the lambda -> 0 and steady-state limits.
enum class ConvolutionCoefficient { derived, printed };

struct ModalConstants {
  double lambda_i = 0.0;
  double gamma_i = 0.0;  ///< alpha lambda / (B + (1 - alpha) lambda)
  double zeta_i = 0.0;   ///< B / (B + (1 - alpha) lambda)
  double k_i = 0.0;
};

/// Throws DomainError unless lambda_i > 0 and 0 < alpha < 1.
ModalConstants modal_constants(double lambda_i, const AlphaContext& ctx,
                               ConvolutionCoefficient which = ConvolutionCoefficient::derived);

/// Solution operator of one mode on one grid:
///   y(t) = zeta E_alpha(-gamma t^alpha) y0 + ((1 - alpha) zeta / B) f(t)
///          + k int_0^t (t - s)^{alpha-1} E_{alpha,alpha}(-gamma (t - s)^alpha) f(s) ds.
/// Kernel values and product-integration weights are computed once.
class ModalPropagator {
 public:
  ModalPropagator(const ModalConstants& mc, const AlphaContext& ctx, const TimeGrid& grid);

  TimeSeries solve(double y0, const TimeSeries& f) const;

  const ModalConstants& constants() const { return constants_; }
  const TimeGrid& grid() const { return grid_; }
  /// E_alpha(-gamma_i t_j^alpha) on the grid.
  const std::vector<double>& decay() const { return decay_; }
  const ConvolutionWeights& weights() const { return weights_; }

 private:
  ModalConstants constants_;
  double local_ = 0.0;
  TimeGrid grid_;
  std::vector<double> decay_;
  ConvolutionWeights weights_;
};

/// One-shot modal solve on f's grid.
TimeSeries solve_modal(double y0_i, const TimeSeries& f_i, const ModalConstants& mc, const AlphaContext& ctx);

/// Mode-by-mode solver for a fixed basis, grid and order; propagators are
/// built once (in parallel across modes) and reused by every solve.
class ForwardSolver {
 public:
  ForwardSolver(const SpectralBasis& basis, const TimeGrid& grid, const AlphaContext& ctx,
                ConvolutionCoefficient which = ConvolutionCoefficient::derived);

  /// Throws ConfigurationError on a basis mismatch and GridError on a grid mismatch.
  Field solve(const ModalCoefficients& y0, const Field& f) const;

  const SpectralBasis& basis() const { return basis_; }
  const TimeGrid& grid() const { return grid_; }
  const AlphaContext& context() const { return ctx_; }
  const ModalPropagator& propagator(int i) const { return propagators_[i]; }

 private:
  SpectralBasis basis_;
  TimeGrid grid_;
  AlphaContext ctx_;
  std::vector<ModalPropagator> propagators_;
};

/// Convenience wrapper: builds a ForwardSolver on f's basis and grid.
Field solve_forward(const ModalCoefficients& y0, const Field& f, const AlphaContext& ctx);

/// Per-mode discrete L^2(0, T) norm of D_0 y_i + lambda_i y_i - f_i, skipping t = 0.
std::vector<double> modal_residuals(const Field& y, const Field& f, const AlphaContext& ctx);

/// Maximum of modal_residuals.
double residual(const Field& y, const Field& f, const AlphaContext& ctx);

/// Maximum over modes of the discrete L^2(0, T) norm of
///   y_i - y0_i - I^alpha(f_i - lambda_i y_i),
/// the integral form, which the representation satisfies without any
/// compatibility between f(0) and y0.
double mild_residual(const Field& y, const ModalCoefficients& y0, const Field& f, const AlphaContext& ctx);

/// Constants of the a priori estimates. c_mlf bounds (1 + z)|E_{alpha,beta}(-z)|
/// for beta in {1, alpha}.
struct AprioriConstants {
  double c_mlf = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
  double lambda_big_1 = 0.0;  ///< max(c1, c2)
  double lambda_big_2 = 0.0;  ///< max(c3, c4)
  double lambda_big_3 = 0.0;  ///< C B sqrt(T) / (1 - alpha)
  double lambda_big_4 = 0.0;  ///< sqrt(2 + 4 C^2 T^2 (1 + 1/Gamma(alpha)^2))
};

AprioriConstants apriori_constants(const AlphaContext& ctx, const SpectralBasis& basis, double t_final,
                                   double z_max = 1e6, int n_probe = 400);

struct BoundCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool applicable = true;
  bool pass = true;
  double slack = 0.0;  ///< (bound - measured) / bound, or 1 when both vanish
};

struct AprioriReport {
  double y_l2_h10 = 0.0;   ///< ||y||_{L^2(0,T;H^1_0)}
  double y_sup_l2 = 0.0;   ///< sup_t ||y(t)||_{L^2}
  double y_l2_l2 = 0.0;    ///< ||y||_{L^2(Q)}
  double y_l2_h2 = 0.0;    ///< ||y||_{L^2(0,T;H^2)}
  double y0_l2 = 0.0, y0_h10 = 0.0, f_l2 = 0.0;
  std::vector<BoundCheck> checks;
  bool all_pass = true;
};

/// Evaluates every applicable bound:
///   theorem_h1        ||y||_{L2(H1_0)} <= L1 (||y0||_{H1_0} + ||f||)
///   theorem_sup_l2    sup_t ||y||      <= L2 (||y0|| + ||f||)
///   theorem_l2_l2     ||y||_{L2(Q)}    <= L2 (||y0|| + ||f||)
///   corollary_f_zero  ||y||_{L2(H2)}   <= L3 ||y0||        (f = 0)
///   corollary_y0_zero ||y||_{L2(H2)}   <= T L4 ||f||       (y0 = 0)
AprioriReport apriori_check(const Field& y, const ModalCoefficients& y0, const Field& f,
                            const AprioriConstants& constants);

}  // namespace abc

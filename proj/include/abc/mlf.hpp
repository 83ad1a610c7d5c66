#pragma once

namespace abc {

/// Evaluation settings for the Mittag-Leffler routines.
struct MlfAccuracy {
  double abs_tol = 1e-13;
  /// Largest |z| for which the power series is attempted.
  double series_cutoff = 15.0;
  /// Cap on the number of terms of the large-|z| expansion.
  int asymptotic_terms = 20;

  void validate() const;
};

/// Which route produced a value; exposed for diagnostics and tests.
enum class MlfMethod { series, asymptotic, integral, closed_form };

struct MlfEvaluation {
  double value = 0.0;
  double error_estimate = 0.0;
  MlfMethod method = MlfMethod::series;
};

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) on the real axis.
///
/// For z <= 0 and 0 < alpha < 1 three routes are tried in order, each one
/// accepted only when its own error estimate is below abs_tol:
///   - the power series with Neumaier summation (small |z|^(1/alpha));
///   - the expansion -sum_{k>=1} z^{-k} / Gamma(beta - alpha k) (large |z|);
///   - the real integral over the collapsed Hankel contour
///       E(-x) = int_0^inf e^{-r} K(r) dr,
///       K(r) = r^{a-b} (r^a sin(pi b) + x sin(pi (b-a))) / (pi (r^{2a} + 2 x r^a cos(pi a) + x^2)),
///     valid for beta < 1 + alpha; larger beta is lowered first with
///     E_{a,b+a}(z) = (E_{a,b}(z) - 1/Gamma(b)) / z.
/// alpha = 1 with integer beta uses exp(z) and the same recurrence.
///
/// Throws DomainError for non-finite input, alpha <= 0 or z > 50, and
/// AccuracyError when no route can certify the tolerance.
double mlf(double alpha, double beta, double z, const MlfAccuracy& accuracy = {});

/// Same as mlf() but reports the route and its error estimate.
MlfEvaluation mlf_evaluate(double alpha, double beta, double z, const MlfAccuracy& accuracy = {});

/// Three-parameter (Prabhakar) function sum_k (rho)_k z^k / (Gamma(alpha k + beta) k!).
/// rho = 1 defers to mlf(). Otherwise the power series, and when it cancels
/// too badly: the three-term recurrence in rho for integer rho, or Laplace
/// inversion over a keyhole contour around the negative axis.
double mlf_generalized(double rho, double alpha, double beta, double z, const MlfAccuracy& accuracy = {});

/// Empirical constant C with (1 + |z|) |E_{alpha,beta}(z)| <= C on [-z_max, 0].
struct MlfBoundEstimate {
  double alpha = 0.0;
  double beta = 0.0;
  double c_constant = 0.0;
  double z_grid_max = 0.0;
};

/// Maximum of (1 + z)|E_{alpha,beta}(-z)| over {0} and n_probe log-spaced
/// points in [1e-6, z_max], inflated by 5%.
MlfBoundEstimate mlf_bound_constant(double alpha, double beta, double z_max, int n_probe,
                                    const MlfAccuracy& accuracy = {});

/// int_0^t E_alpha(-gamma_rate s^alpha) ds = t E_{alpha,2}(-gamma_rate t^alpha).
double kernel_primitive(double alpha, double gamma_rate, double t);

}  // namespace abc

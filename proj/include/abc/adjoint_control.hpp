#pragma once

#include <cstdint>
#include <vector>

#include "abc/field.hpp"
#include "abc/forward_solver.hpp"
#include "abc/frac_ops.hpp"
#include "abc/spectral.hpp"

namespace abc {

/// Tracking problem: minimize over v
///   J(v) = 1/2 ||y(v) - z_d||^2 + (n_reg/2) ||v||^2  in L^2(Q),
/// with y(v) the forward solution for initial data y0 and forcing v + background_f.
struct ControlProblem {
  SpectralBasis basis;
  TimeGrid grid;
  AlphaContext ctx;
  ModalCoefficients y0;
  Field z_d;
  double n_reg;
  Field background_f;

  /// background_f defaults to zero. Throws ConfigurationError when n_reg <= 0
  /// or the fields do not share basis and grid.
  ControlProblem(const SpectralBasis& basis, const TimeGrid& grid, const AlphaContext& ctx, const ModalCoefficients& y0,
                 const Field& z_d, double n_reg);
  ControlProblem(const SpectralBasis& basis, const TimeGrid& grid, const AlphaContext& ctx, const ModalCoefficients& y0,
                 const Field& z_d, double n_reg, const Field& background_f);

  void validate() const;
};

/// Control-to-state map S v = forward(0, v), its adjoint, and the reduced
/// functional, sharing one set of modal propagators.
class ControlSolver {
 public:
  explicit ControlSolver(const ControlProblem& problem);

  const ControlProblem& problem() const { return problem_; }

  /// y(v) = forward(y0, v + background_f).
  Field state(const Field& v) const;
  /// S v = forward(0, v).
  Field apply_s(const Field& v) const;
  /// eta with -D_T eta + lambda_i eta = source, computed as the reversed forward
  /// solve with zero initial data.
  Field adjoint(const Field& source) const;
  double cost(const Field& v) const;
  /// J evaluated from an already computed state.
  double cost_from_state(const Field& v, const Field& y) const;
  Field gradient(const Field& v) const;

 private:
  ControlProblem problem_;
  ForwardSolver solver_;
};

double cost(const Field& v, const ControlProblem& problem);
Field solve_adjoint(const Field& source, const ControlProblem& problem);
/// n_reg v + solve_adjoint(y(v) - z_d).
Field reduced_gradient(const Field& v, const ControlProblem& problem);

struct OptimalityResult {
  Field u_hat;
  Field y_hat;
  Field eta;
  double j_value = 0.0;
  std::vector<double> grad_norm_history;  ///< entry 0 is the gradient at v = 0
  std::vector<double> j_history;
  int iterations = 0;
  bool converged = false;
  double tolerance = 0.0;  ///< absolute threshold tol (1 + ||grad(0)||)
};

/// Conjugate gradients on (n_reg I + S* S) v = -S*(y(0) - z_d), from v = 0, until
/// ||grad|| <= tol (1 + ||grad(0)||). Exhausting max_iter returns converged = false;
/// a non-finite J throws NumericalError.
OptimalityResult optimize(const ControlProblem& problem, double tol, int max_iter);

struct VerifyOptions {
  int perturbations = 10;
  double perturbation_size = 1e-2;  ///< relative to max(||u_hat||, 1)
  double mild_tol = 1e-3;           ///< integral-form residual relative to the data
  double optimality_tol = 1e-6;
  std::uint64_t seed = 20240611;
};

/// Checks of the optimality system. The differential residuals are reported for
/// reference; they only vanish for compatible data, so the pass decision uses the
/// integral-form residuals.
struct OptimalityReport {
  double forward_residual = 0.0;        ///< D_0 y + lambda y - (u + f), discrete L^2(0,T), max over modes
  double forward_mild_residual = 0.0;   ///< relative to ||y0|| + ||u + f||
  double adjoint_residual = 0.0;        ///< -D_T eta + lambda eta - (y - z_d)
  double adjoint_mild_residual = 0.0;   ///< relative to ||y - z_d||
  double optimality_defect = 0.0;       ///< ||u + eta / n_reg|| / max(1, ||u||)
  double terminal_value = 0.0;          ///< max_i |eta_i(T)|
  double terminal_defect = 0.0;         ///< max_i |eta_i(T) - ((1 - alpha) zeta_i / B) g_i(T)|
  int perturbations_won = 0;
  int perturbations_tried = 0;
  bool pass = false;
};

OptimalityReport verify_optimality(const OptimalityResult& result, const ControlProblem& problem,
                                   const VerifyOptions& options = {});

/// Discrete weak-form identity for phi with phi(T) = 0:
///   LHS = sum_i <D_0 y_i + lambda_i y_i, phi_i>
///   RHS = sum_i <y_i, -D_T phi_i + lambda_i phi_i> - (B/(1 - alpha)) sum_i y_i(0) <E_alpha(-gamma t^alpha), phi_i>
/// with trapezoid inner products in time. Returns |LHS - RHS| / (1 + |LHS|).
/// Throws DomainError if phi does not vanish at T.
double duality_check(const Field& y, const Field& phi, const AlphaContext& ctx);

}  // namespace abc

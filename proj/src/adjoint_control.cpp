#include "abc/adjoint_control.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "abc/errors.hpp"
#include "abc/mlf.hpp"

namespace abc {
namespace {

Field reversed(const Field& f) {
  Field out(f);
  for (int i = 0; i < f.n_modes(); ++i) out[i] = f[i].reversed();
  return out;
}

}  // namespace

ControlProblem::ControlProblem(const SpectralBasis& basis_, const TimeGrid& grid_, const AlphaContext& ctx_,
                               const ModalCoefficients& y0_, const Field& z_d_, double n_reg_)
    : ControlProblem(basis_, grid_, ctx_, y0_, z_d_, n_reg_, Field(basis_, grid_)) {}

ControlProblem::ControlProblem(const SpectralBasis& basis_, const TimeGrid& grid_, const AlphaContext& ctx_,
                               const ModalCoefficients& y0_, const Field& z_d_, double n_reg_,
                               const Field& background_f_)
    : basis(basis_), grid(grid_), ctx(ctx_), y0(y0_), z_d(z_d_), n_reg(n_reg_), background_f(background_f_) {
  validate();
}

void ControlProblem::validate() const {
  if (!std::isfinite(n_reg) || !(n_reg > 0.0)) throw ConfigurationError("ControlProblem: n_reg must be positive");
  require_same_basis(basis, y0.basis, "ControlProblem");
  require_same_basis(basis, z_d.basis(), "ControlProblem");
  require_same_basis(basis, background_f.basis(), "ControlProblem");
  if (!(z_d.grid() == grid) || !(background_f.grid() == grid))
    throw GridError("ControlProblem: fields must live on the problem grid");
}

ControlSolver::ControlSolver(const ControlProblem& problem)
    : problem_(problem), solver_(problem.basis, problem.grid, problem.ctx) {}

Field ControlSolver::state(const Field& v) const { return solver_.solve(problem_.y0, v + problem_.background_f); }

Field ControlSolver::apply_s(const Field& v) const { return solver_.solve(ModalCoefficients(problem_.basis), v); }

Field ControlSolver::adjoint(const Field& source) const {
  return reversed(solver_.solve(ModalCoefficients(problem_.basis), reversed(source)));
}

double ControlSolver::cost_from_state(const Field& v, const Field& y) const {
  const Field miss = y - problem_.z_d;
  const double j = 0.5 * inner(miss, miss) + 0.5 * problem_.n_reg * inner(v, v);
  if (!std::isfinite(j)) throw NumericalError("cost: non-finite value");
  return j;
}

double ControlSolver::cost(const Field& v) const { return cost_from_state(v, state(v)); }

Field ControlSolver::gradient(const Field& v) const {
  return problem_.n_reg * v + adjoint(state(v) - problem_.z_d);
}

double cost(const Field& v, const ControlProblem& problem) { return ControlSolver(problem).cost(v); }

Field solve_adjoint(const Field& source, const ControlProblem& problem) {
  require_same_basis(problem.basis, source.basis(), "solve_adjoint");
  if (!(source.grid() == problem.grid)) throw GridError("solve_adjoint: source is on a different time grid");
  return ControlSolver(problem).adjoint(source);
}

Field reduced_gradient(const Field& v, const ControlProblem& problem) { return ControlSolver(problem).gradient(v); }

OptimalityResult optimize(const ControlProblem& problem, double tol, int max_iter) {
  if (!(tol > 0.0)) throw DomainError("optimize: tol must be positive");
  if (max_iter < 0) throw DomainError("optimize: max_iter must be non-negative");
  const ControlSolver cs(problem);
  const double n_reg = problem.n_reg;

  Field v(problem.basis, problem.grid);
  const Field y_free = cs.state(v);
  Field sv(problem.basis, problem.grid);  // S v, kept in step with v

  auto true_gradient = [&] { return n_reg * v + cs.adjoint(y_free + sv - problem.z_d); };

  Field r = -1.0 * true_gradient();
  const double g0 = l2_norm(r);
  const double threshold = tol * (1.0 + g0);

  OptimalityResult res{v, y_free, Field(problem.basis, problem.grid), 0.0, {}, {}, 0, false, threshold};
  res.grad_norm_history.push_back(g0);
  res.j_history.push_back(cs.cost_from_state(v, y_free));

  double rr = g0 * g0;
  Field p = r;
  int it = 0;
  bool converged = g0 <= threshold;
  while (!converged && it < max_iter) {
    const Field sp = cs.apply_s(p);
    const Field ap = n_reg * p + cs.adjoint(sp);
    const double pap = inner(p, ap);
    if (!(pap > 0.0) || !std::isfinite(pap)) throw NumericalError("optimize: curvature along the search direction is not positive");
    const double step = rr / pap;
    v += step * p;
    sv += step * sp;
    r -= step * ap;
    ++it;
    double rr_new = inner(r, r);
    if (std::sqrt(rr_new) <= threshold) {
      // confirm against the recomputed gradient before stopping; restart if the recursion drifted
      r = -1.0 * true_gradient();
      rr_new = inner(r, r);
      if (std::sqrt(rr_new) <= threshold) converged = true;
      p = r;
    } else {
      p = r + (rr_new / rr) * p;
    }
    rr = rr_new;
    res.grad_norm_history.push_back(std::sqrt(rr_new));
    res.j_history.push_back(cs.cost_from_state(v, y_free + sv));
  }

  res.u_hat = v;
  res.y_hat = cs.state(v);
  res.eta = cs.adjoint(res.y_hat - problem.z_d);
  res.j_value = cs.cost_from_state(v, res.y_hat);
  res.iterations = it;
  res.converged = converged;
  return res;
}

OptimalityReport verify_optimality(const OptimalityResult& result, const ControlProblem& problem,
                                   const VerifyOptions& options) {
  const ControlSolver cs(problem);
  const AlphaContext& ctx = problem.ctx;
  OptimalityReport rep;

  const Field forcing = result.u_hat + problem.background_f;
  rep.forward_residual = residual(result.y_hat, forcing, ctx);
  const double data = norms(problem.y0).l2 + l2_norm(forcing);
  rep.forward_mild_residual = mild_residual(result.y_hat, problem.y0, forcing, ctx) / std::max(data, 1e-300);

  const Field source = result.y_hat - problem.z_d;
  const Field eta_rev = reversed(result.eta);
  const Field src_rev = reversed(source);
  rep.adjoint_residual = residual(eta_rev, src_rev, ctx);
  const double src_norm = l2_norm(source);
  rep.adjoint_mild_residual =
      src_norm > 0.0 ? mild_residual(eta_rev, ModalCoefficients(problem.basis), src_rev, ctx) / src_norm : 0.0;

  rep.optimality_defect =
      l2_norm(result.u_hat + (1.0 / problem.n_reg) * result.eta) / std::max(1.0, l2_norm(result.u_hat));

  for (int i = 0; i < problem.basis.n_modes(); ++i) {
    const auto mc = modal_constants(problem.basis.eigenvalue(i + 1), ctx);
    const double local = (1.0 - ctx.alpha) * mc.zeta_i / ctx.b_of_alpha;
    rep.terminal_value = std::max(rep.terminal_value, std::abs(result.eta[i].back()));
    rep.terminal_defect = std::max(rep.terminal_defect, std::abs(result.eta[i].back() - local * source[i].back()));
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> nd;
  const double size = options.perturbation_size * std::max(1.0, l2_norm(result.u_hat));
  const double j_hat = cs.cost(result.u_hat);
  for (int k = 0; k < options.perturbations; ++k) {
    Field d(problem.basis, problem.grid);
    for (int i = 0; i < d.n_modes(); ++i)
      for (auto& x : d[i].values()) x = nd(rng);
    d *= size / l2_norm(d);
    ++rep.perturbations_tried;
    if (cs.cost(result.u_hat + d) > j_hat) ++rep.perturbations_won;
  }

  const double scale = std::max(1.0, rep.terminal_value);
  rep.pass = rep.forward_mild_residual <= options.mild_tol && rep.adjoint_mild_residual <= options.mild_tol &&
             rep.optimality_defect <= options.optimality_tol && rep.terminal_defect <= 1e-12 * scale &&
             rep.perturbations_won == rep.perturbations_tried;
  return rep;
}

double duality_check(const Field& y, const Field& phi, const AlphaContext& ctx) {
  require_compatible(y, phi, "duality_check");
  for (int i = 0; i < phi.n_modes(); ++i) {
    const double scale = std::max(1.0, sup_norm(phi[i]));
    if (std::abs(phi[i].back()) > 1e-14 * scale) throw DomainError("duality_check: phi must vanish at T");
  }
  const TimeGrid& grid = y.grid();
  const AbcKernelTable table = abc_kernel_table(ctx, grid);
  const auto kernel = TimeSeries::sample(
      grid, [&](double t) { return mlf(ctx.alpha, 1.0, -ctx.gamma_rate * std::pow(t, ctx.alpha)); });
  const double c = ctx.derivative_scale();
  double lhs = 0.0, rhs = 0.0;
  for (int i = 0; i < y.n_modes(); ++i) {
    const double lam = y.basis().eigenvalue(i + 1);
    const TimeSeries left = abc_derivative_left(y[i], table) + lam * y[i];
    const TimeSeries right = lam * phi[i] - abc_derivative_right(phi[i], table);
    lhs += trapezoid_inner(left, phi[i]);
    rhs += trapezoid_inner(y[i], right) - c * y[i][0] * trapezoid_inner(kernel, phi[i]);
  }
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

}  // namespace abc

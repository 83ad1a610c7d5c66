#include "abc/forward_solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "abc/errors.hpp"
#include "abc/gamma.hpp"
#include "abc/mlf.hpp"
#include "abc/parallel.hpp"

namespace abc {
namespace {

// sqrt(dt sum_{j>=1} r_j^2) with the trapezoid half weight at T.
double l2_skip_first(const TimeSeries& r) {
  const std::size_t n = r.size() - 1;
  double s = 0.5 * r[n] * r[n];
  for (std::size_t j = 1; j < n; ++j) s += r[j] * r[j];
  return std::sqrt(s * r.grid().dt());
}

void require_forcing_matches(const SpectralBasis& basis, const TimeGrid& grid, const Field& f, const char* where) {
  require_same_basis(basis, f.basis(), where);
  if (!(grid == f.grid())) throw GridError(std::string(where) + ": forcing is on a different time grid");
}

BoundCheck make_check(const std::string& name, double measured, double bound, bool applicable) {
  BoundCheck c;
  c.name = name;
  c.measured = measured;
  c.bound = bound;
  c.applicable = applicable;
  if (bound > 0.0) {
    c.slack = (bound - measured) / bound;
    c.pass = measured < bound;
  } else {
    c.slack = measured == 0.0 ? 1.0 : -1.0;
    c.pass = measured == 0.0;
  }
  return c;
}

}  // namespace

ModalConstants modal_constants(double lambda_i, const AlphaContext& ctx, ConvolutionCoefficient which) {
  if (!std::isfinite(lambda_i) || !(lambda_i > 0.0)) throw DomainError("modal_constants: lambda_i must be positive");
  if (!(ctx.alpha > 0.0 && ctx.alpha < 1.0)) throw DomainError("modal_constants: alpha must lie in (0, 1)");
  const double a = ctx.alpha;
  const double b = ctx.b_of_alpha;
  const double denom = b + (1.0 - a) * lambda_i;
  ModalConstants mc;
  mc.lambda_i = lambda_i;
  mc.gamma_i = a * lambda_i / denom;
  mc.zeta_i = b / denom;
  if (which == ConvolutionCoefficient::derived)
    mc.k_i = a * mc.zeta_i * mc.zeta_i / b;
  else
    mc.k_i = a * mc.zeta_i * special::rgamma(a) / b + (1.0 - a) * mc.gamma_i * mc.zeta_i / b;
  return mc;
}

ModalPropagator::ModalPropagator(const ModalConstants& mc, const AlphaContext& ctx, const TimeGrid& grid)
    : constants_(mc),
      local_((1.0 - ctx.alpha) * mc.zeta_i / ctx.b_of_alpha),
      grid_(grid),
      decay_(grid.size()),
      weights_(convolution_weights(ctx.alpha, mc.gamma_i, grid)) {
  for (std::size_t j = 0; j < decay_.size(); ++j) {
    const double t = grid.node(static_cast<int>(j));
    decay_[j] = mlf(ctx.alpha, 1.0, -mc.gamma_i * std::pow(t, ctx.alpha));
  }
}

TimeSeries ModalPropagator::solve(double y0, const TimeSeries& f) const {
  if (!(f.grid() == grid_)) throw GridError("ModalPropagator::solve: forcing is on a different time grid");
  TimeSeries y = apply_convolution(weights_, f);
  const double zy0 = constants_.zeta_i * y0;
  for (std::size_t j = 0; j < y.size(); ++j)
    y[j] = zy0 * decay_[j] + local_ * f[j] + constants_.k_i * y[j];
  for (double v : y.values())
    if (!std::isfinite(v)) throw NumericalError("ModalPropagator::solve: non-finite solution");
  return y;
}

TimeSeries solve_modal(double y0_i, const TimeSeries& f_i, const ModalConstants& mc, const AlphaContext& ctx) {
  return ModalPropagator(mc, ctx, f_i.grid()).solve(y0_i, f_i);
}

ForwardSolver::ForwardSolver(const SpectralBasis& basis, const TimeGrid& grid, const AlphaContext& ctx,
                             ConvolutionCoefficient which)
    : basis_(basis), grid_(grid), ctx_(ctx) {
  const int n = basis.n_modes();
  std::vector<std::optional<ModalPropagator>> built(n);
  parallel_for(n, [&](int i) {
    built[i].emplace(modal_constants(basis.eigenvalue(i + 1), ctx, which), ctx, grid);
  });
  propagators_.reserve(n);
  for (auto& p : built) propagators_.push_back(std::move(*p));
}

Field ForwardSolver::solve(const ModalCoefficients& y0, const Field& f) const {
  require_same_basis(basis_, y0.basis, "ForwardSolver::solve");
  require_forcing_matches(basis_, grid_, f, "ForwardSolver::solve");
  Field y(basis_, grid_);
  parallel_for(basis_.n_modes(), [&](int i) { y[i] = propagators_[i].solve(y0.coeffs[i], f[i]); });
  return y;
}

Field solve_forward(const ModalCoefficients& y0, const Field& f, const AlphaContext& ctx) {
  require_same_basis(y0.basis, f.basis(), "solve_forward");
  return ForwardSolver(f.basis(), f.grid(), ctx).solve(y0, f);
}

std::vector<double> modal_residuals(const Field& y, const Field& f, const AlphaContext& ctx) {
  require_compatible(y, f, "residual");
  const AbcKernelTable table = abc_kernel_table(ctx, y.grid());
  std::vector<double> out(y.n_modes());
  parallel_for(y.n_modes(), [&](int i) {
    const double lam = y.basis().eigenvalue(i + 1);
    TimeSeries r = abc_derivative_left(y[i], table);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] += lam * y[i][j] - f[i][j];
    out[i] = l2_skip_first(r);
  });
  return out;
}

double residual(const Field& y, const Field& f, const AlphaContext& ctx) {
  const auto r = modal_residuals(y, f, ctx);
  return *std::max_element(r.begin(), r.end());
}

double mild_residual(const Field& y, const ModalCoefficients& y0, const Field& f, const AlphaContext& ctx) {
  require_compatible(y, f, "mild_residual");
  require_same_basis(y.basis(), y0.basis, "mild_residual");
  const ConvolutionWeights rl = convolution_weights(ctx.alpha, 0.0, y.grid());
  const double local = (1.0 - ctx.alpha) / ctx.b_of_alpha;
  const double memory = ctx.alpha / ctx.b_of_alpha;
  std::vector<double> out(y.n_modes());
  parallel_for(y.n_modes(), [&](int i) {
    const double lam = y.basis().eigenvalue(i + 1);
    TimeSeries g = f[i];
    for (std::size_t j = 0; j < g.size(); ++j) g[j] -= lam * y[i][j];
    const TimeSeries conv = apply_convolution(rl, g);
    TimeSeries r(y.grid());
    for (std::size_t j = 0; j < r.size(); ++j)
      r[j] = y[i][j] - y0.coeffs[i] - (local * g[j] + memory * conv[j]);
    out[i] = std::sqrt(trapezoid_inner(r, r));
  });
  return *std::max_element(out.begin(), out.end());
}

AprioriConstants apriori_constants(const AlphaContext& ctx, const SpectralBasis& basis, double t_final, double z_max,
                                   int n_probe) {
  if (!(ctx.alpha > 0.0 && ctx.alpha < 1.0)) throw DomainError("apriori_constants: alpha must lie in (0, 1)");
  if (!(t_final > 0.0)) throw DomainError("apriori_constants: t_final must be positive");
  const double a = ctx.alpha;
  const double b = ctx.b_of_alpha;
  const double c = std::max(mlf_bound_constant(a, 1.0, z_max, n_probe).c_constant,
                            mlf_bound_constant(a, a, z_max, n_probe).c_constant);
  const double lam1 = basis.eigenvalue(1);
  const double g2 = std::pow(special::gamma(a), 2);
  const double t = t_final;
  AprioriConstants k;
  k.c_mlf = c;
  k.c1 = c * b / (1.0 - a) * std::sqrt(6.0 * t / lam1);
  k.c2 = std::sqrt(6.0 * b * b / ((1.0 - a) * (1.0 - a) * lam1) + 12.0 * c * c * t * t / g2 * ((g2 + 1.0) / lam1));
  k.c3 = c * b / (lam1 * (1.0 - a)) * std::sqrt(6.0 * t);
  k.c4 = std::sqrt(6.0 / (lam1 * lam1) + 12.0 * c * c * t * t / g2 * ((g2 + 1.0) / (lam1 * lam1)));
  k.lambda_big_1 = std::max(k.c1, k.c2);
  k.lambda_big_2 = std::max(k.c3, k.c4);
  k.lambda_big_3 = c * b / (1.0 - a) * std::sqrt(t);
  k.lambda_big_4 = std::sqrt(2.0 + 4.0 * c * c * t * t * (1.0 + 1.0 / g2));
  return k;
}

AprioriReport apriori_check(const Field& y, const ModalCoefficients& y0, const Field& f,
                            const AprioriConstants& k) {
  require_compatible(y, f, "apriori_check");
  require_same_basis(y.basis(), y0.basis, "apriori_check");
  const auto& basis = y.basis();
  const std::size_t nt = y.grid().size();
  const auto w = trapezoid_weights(y.grid());
  AprioriReport rep;
  double h1_sq = 0.0, l2_sq = 0.0, h2_sq = 0.0;
  for (std::size_t j = 0; j < nt; ++j) {
    double l2 = 0.0, h1 = 0.0, h2 = 0.0;
    for (int i = 0; i < basis.n_modes(); ++i) {
      const double v2 = y[i][j] * y[i][j];
      const double lam = basis.eigenvalue(i + 1);
      l2 += v2;
      h1 += lam * v2;
      h2 += lam * lam * v2;
    }
    rep.y_sup_l2 = std::max(rep.y_sup_l2, std::sqrt(l2));
    l2_sq += w[j] * l2;
    h1_sq += w[j] * h1;
    h2_sq += w[j] * h2;
  }
  rep.y_l2_l2 = std::sqrt(l2_sq);
  rep.y_l2_h10 = std::sqrt(h1_sq);
  rep.y_l2_h2 = std::sqrt(h2_sq);
  const ModalNorms n0 = norms(y0);
  rep.y0_l2 = n0.l2;
  rep.y0_h10 = n0.h10;
  rep.f_l2 = l2_norm(f);
  const double t = y.grid().t_final();

  rep.checks.push_back(make_check("theorem_h1", rep.y_l2_h10, k.lambda_big_1 * (rep.y0_h10 + rep.f_l2), true));
  rep.checks.push_back(make_check("theorem_sup_l2", rep.y_sup_l2, k.lambda_big_2 * (rep.y0_l2 + rep.f_l2), true));
  rep.checks.push_back(make_check("theorem_l2_l2", rep.y_l2_l2, k.lambda_big_2 * (rep.y0_l2 + rep.f_l2), true));
  rep.checks.push_back(make_check("corollary_f_zero", rep.y_l2_h2, k.lambda_big_3 * rep.y0_l2, rep.f_l2 == 0.0));
  rep.checks.push_back(make_check("corollary_y0_zero", rep.y_l2_h2, t * k.lambda_big_4 * rep.f_l2, rep.y0_l2 == 0.0));
  for (const auto& c : rep.checks)
    if (c.applicable && !c.pass) rep.all_pass = false;
  return rep;
}

}  // namespace abc

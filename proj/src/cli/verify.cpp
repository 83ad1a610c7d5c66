#include <cmath>
#include <ostream>
#include <random>

#include "abc/adjoint_control.hpp"
#include "abc/cli/commands.hpp"
#include "abc/forward_solver.hpp"
#include "abc/gamma.hpp"
#include "abc/mlf.hpp"

namespace abc::cli {

bool VerifyLine::pass() const {
  switch (sense) {
    case Sense::at_most:
      return measured <= bound;
    case Sense::below:
      return measured < bound;
    case Sense::at_least:
      return measured >= bound;
  }
  return false;
}

namespace {

using Lines = std::vector<VerifyLine>;
using Sense = VerifyLine::Sense;

Field smooth_random(const SpectralBasis& b, const TimeGrid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Field f(b, g);
  for (int i = 0; i < b.n_modes(); ++i) {
    const double a = nd(rng), c = nd(rng), w = 1.0 + 4.0 * std::abs(nd(rng)), s = nd(rng);
    f[i] = TimeSeries::sample(g, [=](double t) { return a * std::sin(w * t) + c * std::cos(2.0 * t) + s * t; });
  }
  return f;
}

double max_abs(const TimeSeries& a) { return sup_norm(a); }

Lines mlf_suite() {
  Lines out;
  double rec = 0.0;
  for (double a : {0.3, 0.5, 0.7, 0.9})
    for (double b : {0.5, 1.0, 2.0})
      for (double z : {-0.5, -3.0, -20.0, -80.0})
        rec = std::max(rec, std::abs(mlf(a, b, z) - (special::rgamma(b) + z * mlf(a, a + b, z))));
  out.push_back({"mlf_recurrence", rec, 1e-9});

  double erfc_err = 0.0;
  for (int k = 0; k <= 50; ++k) {
    const double x = 0.1 * k;
    erfc_err = std::max(erfc_err, std::abs(mlf(0.5, 1.0, -x) - std::exp(x * x) * std::erfc(x)));
  }
  out.push_back({"mlf_erfc_identity", erfc_err, 1e-10});

  double exp_err = 0.0;
  for (double z : {-30.0, -7.5, -1.0, -0.1, 0.0, 0.3, 2.0, 10.0})
    exp_err = std::max(exp_err, std::abs(mlf(1.0, 1.0, z) - std::exp(z)) / std::exp(z));
  out.push_back({"mlf_exponential", exp_err, 1e-13});

  double rho1 = 0.0;
  for (double z : {-0.4, -5.0, -30.0}) rho1 = std::max(rho1, std::abs(mlf_generalized(1.0, 0.6, 1.3, z) - mlf(0.6, 1.3, z)));
  out.push_back({"mlf_generalized_rho1", rho1, 0.0});
  return out;
}

Lines fracops_suite() {
  Lines out;
  const auto ctx = AlphaContext::make(0.5);
  const TimeGrid g(1.0, 1000);
  out.push_back({"fracops_constant", max_abs(abc_derivative_left(TimeSeries(g, 3.7), ctx)), 0.0});

  const auto d = abc_derivative_left(TimeSeries::sample(g, [](double t) { return t; }), ctx);
  double lin = 0.0;
  for (int j = 0; j <= g.n_steps(); ++j)
    lin = std::max(lin, std::abs(d[j] - ctx.derivative_scale() * kernel_primitive(0.5, ctx.gamma_rate, g.node(j))));
  out.push_back({"fracops_linear_exact", lin, 1e-12});

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const TimeGrid gr(1.3, 200);
  const auto ctx6 = AlphaContext::make(0.6);
  double rev = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(gr.size());
    for (double& x : v) x = unif(rng);
    const TimeSeries u(gr, v);
    rev = std::max(rev, max_abs(abc_derivative_right(u, ctx6) + abc_derivative_left(u.reversed(), ctx6).reversed()));
  }
  out.push_back({"fracops_time_reversal", rev, 1e-13});

  std::vector<double> err;
  for (int n : {100, 200, 400}) {
    const TimeGrid gi(1.0, n);
    const auto u = TimeSeries::sample(gi, [](double t) { return t * t; });
    const auto back = ab_integral(abc_derivative_left(u, ctx), ctx);
    err.push_back(max_abs(back - u + TimeSeries(gi, u[0])));
  }
  out.push_back({"fracops_inversion_order", std::log2(err[1] / err[2]), 1.5, Sense::at_least});
  return out;
}

double duality_case(int n, double shift) {
  const SpectralBasis b(1.0, 1);
  const TimeGrid g(1.0, n);
  const Field phi(b, {TimeSeries::sample(g, [](double t) { return (1.0 - t) * std::exp(t); })});
  const Field y(b, {TimeSeries::sample(g, [=](double t) { return std::sin(3.0 * t) + shift; })});
  return duality_check(y, phi, AlphaContext::make(0.5));
}

Lines duality_suite() {
  const double coarse = duality_case(1000, 0.5), fine = duality_case(2000, 0.5);
  return {
      {"duality_residual", coarse, 1e-3},
      {"duality_refinement_ratio", fine / coarse, 1.0, Sense::below},
      {"duality_zero_initial_value", duality_case(1000, 0.0), 1e-12},
  };
}

ControlProblem fixture() {
  const SpectralBasis b(1.0, 16);
  const TimeGrid g(1.0, 512);
  ModalCoefficients y0(b);
  y0.coeffs[0] = 1.0;
  return ControlProblem(b, g, AlphaContext::make(0.5), y0, Field(b, g), 1.0);
}

double adjointness(int n) {
  const SpectralBasis b(1.0, 8);
  const TimeGrid g(1.0, n);
  const ControlSolver cs(ControlProblem(b, g, AlphaContext::make(0.5), ModalCoefficients(b), Field(b, g), 1.0));
  std::mt19937_64 rng(17);
  const auto v = smooth_random(b, g, rng);
  const auto w = smooth_random(b, g, rng);
  return std::abs(inner(cs.apply_s(v), w) - inner(v, cs.adjoint(w))) / (l2_norm(v) * l2_norm(w));
}

Lines adjoint_suite() {
  Lines out;
  const double coarse = adjointness(500), fine = adjointness(1000);
  out.push_back({"adjointness_defect", fine, 1e-3});
  out.push_back({"adjointness_refinement_ratio", fine / coarse, 1.0, Sense::below});

  const auto pr = fixture();
  const auto r = optimize(pr, 1e-8, 100);
  const VerifyOptions opt;
  const auto rep = verify_optimality(r, pr, opt);
  out.push_back({"optimality_defect", rep.optimality_defect, opt.optimality_tol});
  out.push_back({"optimality_perturbations_won", double(rep.perturbations_won), double(rep.perturbations_tried),
                 Sense::at_least});
  out.push_back({"state_integral_residual", rep.forward_mild_residual, opt.mild_tol});
  out.push_back({"adjoint_integral_residual", rep.adjoint_mild_residual, opt.mild_tol});
  out.push_back({"adjoint_terminal_defect", rep.terminal_defect, 1e-12});
  return out;
}

Lines gradient_suite() {
  const SpectralBasis b(1.0, 4);
  const TimeGrid g(1.0, 256);
  std::mt19937_64 rng(8);
  ModalCoefficients y0(b);
  y0.coeffs[0] = 1.0;
  const auto z = smooth_random(b, g, rng);
  const ControlSolver cs(ControlProblem(b, g, AlphaContext::make(0.5), y0, z, 0.5));
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const auto v = smooth_random(b, g, rng);
    const auto d = smooth_random(b, g, rng);
    const double h = 1e-5;
    const double fd = (cs.cost(v + h * d) - cs.cost(v - h * d)) / (2 * h);
    const double an = inner(cs.gradient(v), d);
    worst = std::max(worst, std::abs(fd - an) / std::abs(an));
  }
  return {{"gradient_fd_mismatch", worst, 1e-4}};
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = {"mlf", "fracops", "duality", "adjoint", "gradient", "all"};
  return names;
}

std::vector<VerifyLine> verify_suite(const std::string& suite) {
  if (suite == "mlf") return mlf_suite();
  if (suite == "fracops") return fracops_suite();
  if (suite == "duality") return duality_suite();
  if (suite == "adjoint") return adjoint_suite();
  if (suite == "gradient") return gradient_suite();
  if (suite == "all") {
    Lines all;
    for (const auto& name : verify_suites()) {
      if (name == "all") continue;
      auto part = verify_suite(name);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw ConfigurationError("unknown suite '" + suite + "'");
}

int run_verify(const std::string& suite, std::ostream& log) {
  bool ok = true;
  for (const auto& line : verify_suite(suite)) {
    ok = ok && line.pass();
    log << (line.pass() ? "ok " : "FAIL ") << line.name << " " << format_number(line.measured) << " "
        << format_number(line.bound) << "\n";
  }
  return ok ? exit_ok : exit_verify_failed;
}

}  // namespace abc::cli

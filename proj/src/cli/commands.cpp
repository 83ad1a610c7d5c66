#include "abc/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "abc/adjoint_control.hpp"
#include "abc/forward_solver.hpp"

namespace abc::cli {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

constexpr int kOutputNodes = 101;

class Csv {
 public:
  Csv(const std::filesystem::path& path, const std::string& header) : path_(path) { text_ = header + "\n"; }
  void save() const {
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    out << text_;
    if (!out) throw ConfigurationError("cannot write " + path_.string());
  }

  Csv& cell(double v) { return put(format_number(v)); }
  Csv& cell(int v) { return put(std::to_string(v)); }
  Csv& cell(const std::string& s) { return put(s); }
  void end() {
    text_ += "\n";
    fresh_ = true;
  }

 private:
  Csv& put(const std::string& s) {
    if (!fresh_) text_ += ',';
    text_ += s;
    fresh_ = false;
    return *this;
  }

  std::filesystem::path path_;
  std::string text_;
  bool fresh_ = true;
};

std::vector<double> output_nodes(const SpectralBasis& b) {
  std::vector<double> x(kOutputNodes);
  for (int m = 0; m < kOutputNodes; ++m) x[m] = b.length() * m / (kOutputNodes - 1);
  x.back() = b.length();
  return x;
}

void write_field(const std::filesystem::path& path, const std::string& column, const Field& y) {
  Csv csv(path, "t,x," + column);
  const auto xs = output_nodes(y.basis());
  for (int j = 0; j <= y.grid().n_steps(); ++j) {
    const double t = y.grid().node(j);
    const auto v = y.sample(j, xs);
    for (int m = 0; m < kOutputNodes; ++m) {
      csv.cell(t).cell(xs[m]).cell(v[m]);
      csv.end();
    }
  }
  csv.save();
}

std::filesystem::path prepare(const std::string& out_dir) {
  std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigurationError("cannot create output directory " + out_dir + ": " + ec.message());
  return dir;
}

// Smooth test function vanishing at T, used for the duality column.
Field duality_probe(const SpectralBasis& b, const TimeGrid& g) {
  std::vector<TimeSeries> modal;
  const double tf = g.t_final();
  for (int i = 0; i < b.n_modes(); ++i)
    modal.push_back(TimeSeries::sample(g, [=](double t) { return (1.0 - t / tf) * std::exp(t / tf) / (i + 1); }));
  return Field(b, std::move(modal));
}

}  // namespace

int run_solve(const ScenarioConfig& cfg, const std::string& out_dir, std::ostream& log) {
  const auto basis = make_basis(cfg);
  const auto grid = make_grid(cfg, cfg.n_time);
  const auto ctx = make_context(cfg);
  const auto y0 = make_profile(cfg.y0, basis);
  const auto f = make_field(cfg.f, basis, grid);
  const auto y = solve_forward(y0, f, ctx);
  const auto dir = prepare(out_dir);

  {
    Csv csv(dir / "modal.csv", "t,mode_index,coefficient");
    for (int j = 0; j <= grid.n_steps(); ++j)
      for (int i = 0; i < basis.n_modes(); ++i) {
        csv.cell(grid.node(j)).cell(i + 1).cell(y[i][j]);
        csv.end();
      }
    csv.save();
  }
  write_field(dir / "field.csv", "y", y);

  const double res = residual(y, f, ctx);
  const double mild = mild_residual(y, y0, f, ctx);
  const auto report = apriori_check(y, y0, f, apriori_constants(ctx, basis, cfg.t_final));
  {
    Csv csv(dir / "diagnostics.csv", "quantity,value");
    auto row = [&](const std::string& name, double v) {
      csv.cell(name).cell(v);
      csv.end();
    };
    row("residual", res);
    row("mild_residual", mild);
    row("y_l2_h10", report.y_l2_h10);
    row("y_sup_l2", report.y_sup_l2);
    row("y_l2_l2", report.y_l2_l2);
    row("y_l2_h2", report.y_l2_h2);
    row("y0_l2", report.y0_l2);
    row("y0_h10", report.y0_h10);
    row("f_l2", report.f_l2);
    for (const auto& c : report.checks) {
      if (!c.applicable) continue;
      row(c.name + "_measured", c.measured);
      row(c.name + "_bound", c.bound);
      row(c.name + "_slack", c.slack);
    }
    csv.save();
  }
  log << "residual " << format_number(res) << "\n";
  log << "mild_residual " << format_number(mild) << "\n";
  log << "a priori bounds " << (report.all_pass ? "hold" : "VIOLATED") << "\n";
  return exit_ok;
}

int run_optimize(const ScenarioConfig& cfg, const std::string& out_dir, std::ostream& log) {
  if (!cfg.control) throw ConfigurationError(cfg.source + ": optimize needs a [control] section with n_reg");
  const auto basis = make_basis(cfg);
  const auto grid = make_grid(cfg, cfg.n_time);
  const ControlProblem problem(basis, grid, make_context(cfg), make_profile(cfg.y0, basis),
                               make_field(cfg.control->z_d, basis, grid), cfg.control->n_reg,
                               make_field(cfg.f, basis, grid));
  const auto r = optimize(problem, cfg.control->cg_tol, cfg.control->max_iter);
  const auto dir = prepare(out_dir);
  write_field(dir / "control.csv", "u_hat", r.u_hat);
  write_field(dir / "state.csv", "y_hat", r.y_hat);
  write_field(dir / "adjoint.csv", "eta", r.eta);
  {
    Csv csv(dir / "optimize_log.csv", "iter,grad_norm,j_value");
    for (std::size_t k = 0; k < r.grad_norm_history.size(); ++k) {
      csv.cell(static_cast<int>(k)).cell(r.grad_norm_history[k]);
      csv.cell(k < r.j_history.size() ? r.j_history[k] : NAN);
      csv.end();
    }
    csv.save();
  }
  log << "J " << format_number(r.j_value) << "\n";
  log << "iterations " << r.iterations << "\n";
  if (!r.converged) {
    log << "not converged after " << r.iterations << " iterations (gradient norm "
        << format_number(r.grad_norm_history.back()) << ", threshold " << format_number(r.tolerance) << ")\n";
    return exit_not_converged;
  }
  return exit_ok;
}

int run_convergence(const ScenarioConfig& cfg, int refinements, const std::string& out_dir, std::ostream& log) {
  if (refinements < 2)
    throw ConfigurationError("--refinements must be at least 2, got " + std::to_string(refinements));
  const auto basis = make_basis(cfg);
  const auto ctx = make_context(cfg);
  const auto y0 = make_profile(cfg.y0, basis);
  const auto dir = prepare(out_dir);
  Csv csv(dir / "convergence.csv", "dt,forward_residual,duality_residual,observed_order");
  double prev = NAN;
  long n = cfg.n_time;
  for (int level = 0; level <= refinements; ++level, n *= 2) {
    if (n > 1 << 22) throw ConfigurationError("--refinements: grid would exceed 2^22 steps");
    const auto grid = make_grid(cfg, static_cast<int>(n));
    const auto f = make_field(cfg.f, basis, grid);
    const auto y = solve_forward(y0, f, ctx);
    const double res = residual(y, f, ctx);
    const double dual = duality_check(y, duality_probe(basis, grid), ctx);
    const double order = level == 0 ? NAN : std::log2(prev / res);
    csv.cell(grid.dt()).cell(res).cell(dual).cell(order);
    csv.end();
    log << "dt " << format_number(grid.dt()) << " residual " << format_number(res) << " duality "
        << format_number(dual) << "\n";
    prev = res;
  }
  csv.save();
  return exit_ok;
}

}  // namespace abc::cli

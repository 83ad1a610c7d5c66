#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "abc/adjoint_control.hpp"
#include "abc/cli/commands.hpp"
#include "abc/forward_solver.hpp"
#include "abc/frac_ops.hpp"
#include "abc/mlf.hpp"

namespace py = pybind11;
using namespace abc;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

TimeSeries series_from(const Array& u, double t_final) {
  if (u.ndim() != 1) throw DomainError("expected a 1-d array");
  const TimeGrid g(t_final, static_cast<int>(u.shape(0)) - 1);
  return TimeSeries(g, std::vector<double>(u.data(), u.data() + u.shape(0)));
}

Array to_array(const TimeSeries& s) {
  Array out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(s.size())});
  double* p = out.mutable_data();
  for (std::size_t j = 0; j < s.size(); ++j) p[j] = s[j];
  return out;
}

// Rows are time nodes, columns are modes.
Field field_from(const Array& a, const SpectralBasis& b, const TimeGrid& g) {
  if (a.ndim() != 2 || a.shape(0) != static_cast<py::ssize_t>(g.size()) || a.shape(1) != b.n_modes())
    throw GridError("expected an array of shape (n_time + 1, n_modes)");
  Field f(b, g);
  const auto r = a.unchecked<2>();
  for (int i = 0; i < b.n_modes(); ++i) {
    std::vector<double> v(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) v[j] = r(j, i);
    f[i] = TimeSeries(g, v);
  }
  return f;
}

Array to_array(const Field& f) {
  Array out({static_cast<py::ssize_t>(f.grid().size()), static_cast<py::ssize_t>(f.n_modes())});
  auto w = out.mutable_unchecked<2>();
  for (int i = 0; i < f.n_modes(); ++i)
    for (std::size_t j = 0; j < f.grid().size(); ++j) w(j, i) = f[i][j];
  return out;
}

ModalCoefficients coeffs_from(const Array& a, const SpectralBasis& b) {
  if (a.ndim() != 1 || a.shape(0) != b.n_modes()) throw ConfigurationError("y0 must have n_modes entries");
  return ModalCoefficients(b, std::vector<double>(a.data(), a.data() + a.shape(0)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Atangana-Baleanu-Caputo fractional diffusion: forward solver and optimal control";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<GridError>(m, "GridError", base.ptr());
  py::register_exception<ConfigurationError>(m, "ConfigurationError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<AccuracyError>(m, "AccuracyError", base.ptr());

  m.def("mlf", [](double a, double b, double z, double tol) { return mlf(a, b, z, MlfAccuracy{tol}); },
        py::arg("alpha"), py::arg("beta"), py::arg("z"), py::arg("abs_tol") = 1e-13);
  m.def("mlf_generalized", [](double rho, double a, double b, double z) { return mlf_generalized(rho, a, b, z); },
        py::arg("rho"), py::arg("alpha"), py::arg("beta"), py::arg("z"));

  m.def("normalization", [](double a) { return AlphaContext::make(a).b_of_alpha; }, py::arg("alpha"),
        "B(alpha) = (1 - alpha) + alpha / Gamma(alpha)");

  m.def(
      "abc_derivative",
      [](const Array& u, double t_final, double a, const std::string& side) {
        const auto ctx = AlphaContext::make(a);
        const auto s = series_from(u, t_final);
        if (side == "left") return to_array(abc_derivative_left(s, ctx));
        if (side == "right") return to_array(abc_derivative_right(s, ctx));
        throw DomainError("side must be 'left' or 'right'");
      },
      py::arg("u"), py::arg("t_final"), py::arg("alpha"), py::arg("side") = "left");
  m.def(
      "ab_integral",
      [](const Array& u, double t_final, double a) { return to_array(ab_integral(series_from(u, t_final), AlphaContext::make(a))); },
      py::arg("u"), py::arg("t_final"), py::arg("alpha"));

  m.def(
      "modal_constants",
      [](double lambda, double a) {
        const auto mc = modal_constants(lambda, AlphaContext::make(a));
        py::dict d;
        d["lambda_i"] = mc.lambda_i;
        d["gamma_i"] = mc.gamma_i;
        d["zeta_i"] = mc.zeta_i;
        d["k_i"] = mc.k_i;
        return d;
      },
      py::arg("lambda_i"), py::arg("alpha"));

  m.def(
      "solve_forward",
      [](const Array& y0, const Array& f, double t_final, double a, double length) {
        if (f.ndim() != 2) throw GridError("f must have shape (n_time + 1, n_modes)");
        const SpectralBasis b(length, static_cast<int>(f.shape(1)));
        const TimeGrid g(t_final, static_cast<int>(f.shape(0)) - 1);
        py::gil_scoped_release release;
        const auto y = solve_forward(coeffs_from(y0, b), field_from(f, b, g), AlphaContext::make(a));
        py::gil_scoped_acquire acquire;
        return to_array(y);
      },
      py::arg("y0"), py::arg("f"), py::arg("t_final"), py::arg("alpha"), py::arg("length") = 1.0,
      "Modal coefficients of the state, shape (n_time + 1, n_modes).");

  m.def(
      "optimize",
      [](const Array& y0, const std::optional<Array>& z_d, double n_reg, double t_final, int n_time, double a,
         double length, double tol, int max_iter) {
        const SpectralBasis b(length, static_cast<int>(y0.shape(0)));
        const TimeGrid g(t_final, n_time);
        const ControlProblem pr(b, g, AlphaContext::make(a), coeffs_from(y0, b), z_d ? field_from(*z_d, b, g) : Field(b, g),
                                n_reg);
        const auto r = optimize(pr, tol, max_iter);
        const auto rep = verify_optimality(r, pr);
        py::dict d;
        d["u_hat"] = to_array(r.u_hat);
        d["y_hat"] = to_array(r.y_hat);
        d["eta"] = to_array(r.eta);
        d["j_value"] = r.j_value;
        d["grad_norm_history"] = r.grad_norm_history;
        d["j_history"] = r.j_history;
        d["iterations"] = r.iterations;
        d["converged"] = r.converged;
        d["optimality_defect"] = rep.optimality_defect;
        d["verified"] = rep.pass;
        return d;
      },
      py::arg("y0"), py::arg("z_d") = py::none(), py::arg("n_reg") = 1.0, py::arg("t_final") = 1.0,
      py::arg("n_time") = 512, py::arg("alpha") = 0.5, py::arg("length") = 1.0, py::arg("tol") = 1e-8,
      py::arg("max_iter") = 200);

  m.def(
      "verify",
      [](const std::string& suite) {
        std::vector<py::tuple> out;
        for (const auto& line : cli::verify_suite(suite))
          out.push_back(py::make_tuple(line.name, line.measured, line.bound, line.pass()));
        return out;
      },
      py::arg("suite") = "all", "List of (name, measured, bound, passed).");
}

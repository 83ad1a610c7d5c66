#include "abc/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "abc/errors.hpp"

namespace abc {

SpectralBasis::SpectralBasis(double length, int n_modes, int quad_points)
    : length_(length), n_modes_(n_modes), quad_points_(quad_points) {
  if (!std::isfinite(length) || !(length > 0.0)) throw ConfigurationError("SpectralBasis: length must be positive");
  if (n_modes < 1) throw ConfigurationError("SpectralBasis: n_modes must be >= 1");
  if (quad_points < 2 || quad_points % 2 != 0)
    throw ConfigurationError("SpectralBasis: quad_points must be even and >= 2, got " + std::to_string(quad_points));
}

double SpectralBasis::eigenvalue(int k) const {
  const double w = k * std::numbers::pi / length_;
  return w * w;
}

double SpectralBasis::mode(int k, double x) const {
  return std::sqrt(2.0 / length_) * std::sin(k * std::numbers::pi * x / length_);
}

double SpectralBasis::mode_derivative(int k, double x) const {
  const double w = k * std::numbers::pi / length_;
  return std::sqrt(2.0 / length_) * w * std::cos(w * x);
}

std::vector<double> SpectralBasis::quad_nodes() const {
  std::vector<double> x(quad_points_ + 1);
  for (int i = 0; i <= quad_points_; ++i) x[i] = length_ * i / quad_points_;
  return x;
}

std::vector<double> SpectralBasis::quad_weights() const {
  const double h = length_ / quad_points_;
  std::vector<double> w(quad_points_ + 1);
  for (int i = 0; i <= quad_points_; ++i) w[i] = (i == 0 || i == quad_points_) ? 1.0 : (i % 2 ? 4.0 : 2.0);
  for (double& v : w) v *= h / 3.0;
  return w;
}

ModalCoefficients::ModalCoefficients(const SpectralBasis& b, std::vector<double> c) : basis(b), coeffs(std::move(c)) {
  if (coeffs.size() != static_cast<std::size_t>(b.n_modes()))
    throw ConfigurationError("ModalCoefficients: expected " + std::to_string(b.n_modes()) + " coefficients, got " +
                             std::to_string(coeffs.size()));
  for (double v : coeffs)
    if (!std::isfinite(v)) throw NumericalError("ModalCoefficients: non-finite coefficient");
}

void require_same_basis(const SpectralBasis& a, const SpectralBasis& b, const char* where) {
  if (!(a == b)) throw ConfigurationError(std::string(where) + ": operands use different spectral bases");
}

ModalCoefficients project(const std::vector<double>& samples, const SpectralBasis& basis) {
  const auto x = basis.quad_nodes();
  if (samples.size() != x.size())
    throw DomainError("project: expected " + std::to_string(x.size()) + " samples on the quadrature nodes");
  const auto w = basis.quad_weights();
  ModalCoefficients mc(basis);
  for (int k = 1; k <= basis.n_modes(); ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * samples[i] * basis.mode(k, x[i]);
    mc.coeffs[k - 1] = s;
  }
  return mc;
}

ModalCoefficients project(const std::function<double(double)>& sample, const SpectralBasis& basis) {
  const auto x = basis.quad_nodes();
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    v[i] = sample(x[i]);
    if (!std::isfinite(v[i])) throw DomainError("project: sample is not finite at x = " + std::to_string(x[i]));
  }
  return project(v, basis);
}

std::vector<double> reconstruct(const ModalCoefficients& mc, const std::vector<double>& x_nodes) {
  const double len = mc.basis.length();
  std::vector<double> out(x_nodes.size());
  for (std::size_t i = 0; i < x_nodes.size(); ++i) {
    const double x = x_nodes[i];
    if (!(x >= 0.0 && x <= len)) throw DomainError("reconstruct: x outside [0, L]");
    double s = 0.0;
    for (int k = 1; k <= mc.basis.n_modes(); ++k) s += mc.coeffs[k - 1] * mc.basis.mode(k, x);
    out[i] = s;
  }
  return out;
}

ModalNorms norms(const ModalCoefficients& mc) {
  double l2 = 0.0, h1 = 0.0, h2 = 0.0;
  for (int k = 1; k <= mc.basis.n_modes(); ++k) {
    const double c2 = mc.coeffs[k - 1] * mc.coeffs[k - 1];
    const double lam = mc.basis.eigenvalue(k);
    l2 += c2;
    h1 += lam * c2;
    h2 += lam * lam * c2;
  }
  return {std::sqrt(l2), std::sqrt(h1), std::sqrt(h2)};
}

}  // namespace abc

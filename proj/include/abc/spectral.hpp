#pragma once

#include <functional>
#include <vector>

namespace abc {

/// Dirichlet eigenpairs of -d^2/dx^2 on (0, L):
/// lambda_k = (k pi / L)^2, w_k(x) = sqrt(2/L) sin(k pi x / L), k = 1..n_modes.
class SpectralBasis {
 public:
  /// quad_points is the number of composite Simpson panels (even, >= 2).
  explicit SpectralBasis(double length = 1.0, int n_modes = 64, int quad_points = 4096);

  double length() const { return length_; }
  int n_modes() const { return n_modes_; }
  int quad_points() const { return quad_points_; }

  double eigenvalue(int k) const;
  double mode(int k, double x) const;
  double mode_derivative(int k, double x) const;

  /// The quadrature nodes x_i = i L / quad_points and their Simpson weights.
  std::vector<double> quad_nodes() const;
  std::vector<double> quad_weights() const;

  bool operator==(const SpectralBasis& other) const = default;

 private:
  double length_;
  int n_modes_;
  int quad_points_;
};

/// Coefficients (y, w_k) for k = 1..n_modes, stored 0-based.
struct ModalCoefficients {
  SpectralBasis basis;
  std::vector<double> coeffs;

  explicit ModalCoefficients(const SpectralBasis& b) : basis(b), coeffs(b.n_modes(), 0.0) {}
  ModalCoefficients(const SpectralBasis& b, std::vector<double> c);

  /// Coefficient of mode k (1-based).
  double operator()(int k) const { return coeffs.at(k - 1); }
};

/// Throws ConfigurationError unless both refer to the same basis.
void require_same_basis(const SpectralBasis& a, const SpectralBasis& b, const char* where);

/// Composite Simpson projection onto the first n_modes modes.
/// Throws DomainError if the function is not finite somewhere on [0, L].
ModalCoefficients project(const std::function<double(double)>& sample, const SpectralBasis& basis);

/// Same, from values on basis.quad_nodes().
ModalCoefficients project(const std::vector<double>& samples, const SpectralBasis& basis);

/// sum_k c_k w_k(x) in ascending k. Throws DomainError for x outside [0, L].
std::vector<double> reconstruct(const ModalCoefficients& mc, const std::vector<double>& x_nodes);

struct ModalNorms {
  double l2 = 0.0;
  double h10 = 0.0;
  double h2 = 0.0;
};

/// Parseval norms with weights 1, lambda_k, lambda_k^2.
ModalNorms norms(const ModalCoefficients& mc);

}  // namespace abc

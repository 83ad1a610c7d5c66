#pragma once

#include <vector>

#include "abc/spectral.hpp"
#include "abc/time_series.hpp"

namespace abc {

/// Space-time function in modal form: one TimeSeries per mode, all on one grid.
/// Index i holds the coefficient of mode k = i + 1.
class Field {
 public:
  Field(const SpectralBasis& basis, const TimeGrid& grid);
  /// Throws ConfigurationError on a mode-count mismatch and GridError if the series disagree.
  Field(const SpectralBasis& basis, std::vector<TimeSeries> modal);

  /// profile(x) * g(t).
  static Field separable(const ModalCoefficients& profile, const TimeSeries& g);

  const SpectralBasis& basis() const { return basis_; }
  const TimeGrid& grid() const { return grid_; }
  int n_modes() const { return basis_.n_modes(); }

  const TimeSeries& operator[](std::size_t i) const { return modal_[i]; }
  TimeSeries& operator[](std::size_t i) { return modal_[i]; }
  const std::vector<TimeSeries>& modal() const { return modal_; }

  /// Modal coefficients at time node j.
  ModalCoefficients at(int j) const;
  /// Physical values at time node j on the given x nodes.
  std::vector<double> sample(int j, const std::vector<double>& x_nodes) const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);

 private:
  SpectralBasis basis_;
  TimeGrid grid_;
  std::vector<TimeSeries> modal_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// ConfigurationError on a basis mismatch, GridError on a grid mismatch.
void require_compatible(const Field& a, const Field& b, const char* where);

/// L^2(Q) inner product: Parseval in space, trapezoid in time.
double inner(const Field& a, const Field& b);
double l2_norm(const Field& a);

}  // namespace abc

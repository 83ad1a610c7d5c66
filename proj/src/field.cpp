#include "abc/field.hpp"

#include <cmath>
#include <string>

#include "abc/errors.hpp"

namespace abc {

Field::Field(const SpectralBasis& basis, const TimeGrid& grid)
    : basis_(basis), grid_(grid), modal_(basis.n_modes(), TimeSeries(grid)) {}

Field::Field(const SpectralBasis& basis, std::vector<TimeSeries> modal)
    : basis_(basis), grid_(modal.empty() ? TimeGrid(1.0, 2) : modal.front().grid()), modal_(std::move(modal)) {
  if (modal_.size() != static_cast<std::size_t>(basis.n_modes()))
    throw ConfigurationError("Field: expected " + std::to_string(basis.n_modes()) + " modal series, got " +
                             std::to_string(modal_.size()));
  for (const auto& s : modal_)
    if (!(s.grid() == grid_)) throw GridError("Field: modal series use different time grids");
}

Field Field::separable(const ModalCoefficients& profile, const TimeSeries& g) {
  Field f(profile.basis, g.grid());
  for (int i = 0; i < f.n_modes(); ++i) f.modal_[i] = profile.coeffs[i] * g;
  return f;
}

ModalCoefficients Field::at(int j) const {
  ModalCoefficients mc(basis_);
  for (int i = 0; i < n_modes(); ++i) mc.coeffs[i] = modal_[i][j];
  return mc;
}

std::vector<double> Field::sample(int j, const std::vector<double>& x_nodes) const {
  return reconstruct(at(j), x_nodes);
}

void require_compatible(const Field& a, const Field& b, const char* where) {
  require_same_basis(a.basis(), b.basis(), where);
  if (!(a.grid() == b.grid())) throw GridError(std::string(where) + ": time grids differ");
}

Field& Field::operator+=(const Field& other) {
  require_compatible(*this, other, "Field::operator+=");
  for (int i = 0; i < n_modes(); ++i) modal_[i] += other.modal_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_compatible(*this, other, "Field::operator-=");
  for (int i = 0; i < n_modes(); ++i) modal_[i] -= other.modal_[i];
  return *this;
}

Field& Field::operator*=(double s) {
  for (auto& m : modal_) m *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

double inner(const Field& a, const Field& b) {
  require_compatible(a, b, "inner");
  double s = 0.0;
  for (int i = 0; i < a.n_modes(); ++i) s += trapezoid_inner(a[i], b[i]);
  return s;
}

double l2_norm(const Field& a) { return std::sqrt(inner(a, a)); }

}  // namespace abc

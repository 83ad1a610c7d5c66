#include "abc/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abc/errors.hpp"

namespace abc {

TimeGrid::TimeGrid(double t_final, int n_steps) : t_final_(t_final), n_steps_(n_steps) {
  if (!std::isfinite(t_final) || !(t_final > 0.0)) throw GridError("TimeGrid: t_final must be positive and finite");
  if (n_steps < 2) throw GridError("TimeGrid: n_steps must be >= 2, got " + std::to_string(n_steps));
}

TimeSeries::TimeSeries(const TimeGrid& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

TimeSeries::TimeSeries(const TimeGrid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw GridError("TimeSeries: expected " + std::to_string(grid_.size()) + " values, got " +
                    std::to_string(values_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw NumericalError("TimeSeries: non-finite sample");
}

TimeSeries TimeSeries::sample(const TimeGrid& grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.node(static_cast<int>(j)));
  return TimeSeries(grid, std::move(v));
}

TimeSeries TimeSeries::reversed() const {
  TimeSeries out(*this);
  std::reverse(out.values_.begin(), out.values_.end());
  return out;
}

void require_same_grid(const TimeSeries& a, const TimeSeries& b, const char* where) {
  if (!(a.grid() == b.grid())) throw GridError(std::string(where) + ": time grids differ");
}

TimeSeries& TimeSeries::operator+=(const TimeSeries& other) {
  require_same_grid(*this, other, "TimeSeries::operator+=");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

TimeSeries& TimeSeries::operator-=(const TimeSeries& other) {
  require_same_grid(*this, other, "TimeSeries::operator-=");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

TimeSeries& TimeSeries::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

TimeSeries operator+(TimeSeries a, const TimeSeries& b) { return a += b; }
TimeSeries operator-(TimeSeries a, const TimeSeries& b) { return a -= b; }
TimeSeries operator*(double s, TimeSeries a) { return a *= s; }

std::vector<double> trapezoid_weights(const TimeGrid& grid) {
  std::vector<double> w(grid.size(), grid.dt());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

double trapezoid_inner(const TimeSeries& a, const TimeSeries& b) {
  require_same_grid(a, b, "trapezoid_inner");
  const std::size_t n = a.size() - 1;
  double s = 0.5 * (a[0] * b[0] + a[n] * b[n]);
  for (std::size_t j = 1; j < n; ++j) s += a[j] * b[j];
  return s * a.grid().dt();
}

double sup_norm(const TimeSeries& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace abc

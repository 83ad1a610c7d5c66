#pragma once

#include <functional>
#include <vector>

namespace abc {

/// Uniform grid t_j = j * T / n_steps, j = 0..n_steps.
class TimeGrid {
 public:
  /// Throws GridError unless t_final > 0 and n_steps >= 2.
  TimeGrid(double t_final, int n_steps);

  double t_final() const { return t_final_; }
  int n_steps() const { return n_steps_; }
  double dt() const { return t_final_ / n_steps_; }
  double node(int j) const { return j == n_steps_ ? t_final_ : j * dt(); }
  std::size_t size() const { return static_cast<std::size_t>(n_steps_) + 1; }

  bool operator==(const TimeGrid& other) const = default;

 private:
  double t_final_;
  int n_steps_;
};

/// A scalar function sampled on every node of a TimeGrid.
class TimeSeries {
 public:
  explicit TimeSeries(const TimeGrid& grid, double fill = 0.0);
  /// Throws GridError on a length mismatch and NumericalError on non-finite values.
  TimeSeries(const TimeGrid& grid, std::vector<double> values);

  static TimeSeries sample(const TimeGrid& grid, const std::function<double(double)>& f);

  const TimeGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  double& operator[](std::size_t j) { return values_[j]; }
  double front() const { return values_.front(); }
  double back() const { return values_.back(); }

  /// u(T - t) on the same grid.
  TimeSeries reversed() const;

  TimeSeries& operator+=(const TimeSeries& other);
  TimeSeries& operator-=(const TimeSeries& other);
  TimeSeries& operator*=(double s);

 private:
  TimeGrid grid_;
  std::vector<double> values_;
};

TimeSeries operator+(TimeSeries a, const TimeSeries& b);
TimeSeries operator-(TimeSeries a, const TimeSeries& b);
TimeSeries operator*(double s, TimeSeries a);

/// Throws GridError unless both series live on the same grid.
void require_same_grid(const TimeSeries& a, const TimeSeries& b, const char* where);

/// Composite trapezoid of a(t) b(t) over [0, T].
double trapezoid_inner(const TimeSeries& a, const TimeSeries& b);

/// Trapezoid weights dt * {1/2, 1, ..., 1, 1/2}.
std::vector<double> trapezoid_weights(const TimeGrid& grid);

/// max_j |u_j|.
double sup_norm(const TimeSeries& u);

}  // namespace abc

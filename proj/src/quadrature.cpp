#include "abc/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace abc::quad {
namespace {

// QUADPACK qk21 nodes and weights.
constexpr std::array<double, 5> kWg = {.066671344308688137593568809893332, .149451349150580593145776339657697,
                                       .219086362515982043995534934228163, .269266719309996355091226921569469,
                                       .295524224714752870173892994651338};
constexpr std::array<double, 11> kXgk = {
    .995657163025808080735527280689003, .973906528517171720077964012084452, .930157491355708226001207180059508,
    .865063366688984510732096688423493, .780817726586416897063717578345042, .679409568299024406234327365114874,
    .562757134668604683339000099272694, .433395394129247190799265943165784, .294392862701460198131126603103866,
    .14887433898163121088482600112972,  0.0};
constexpr std::array<double, 11> kWgk = {
    .011694638867371874278064396062192, .03255816230796472747881897245939,  .05475589657435199603138130024458,
    .07503967481091995276704314091619,  .093125454583697605535065465083366, .109387158802297641899210590325805,
    .123491976262065851077958109831074, .134709217311473325928054001771707, .142775938577060080797094273138717,
    .147739104901338491374841515972068, .149445554002916905664936468389821};

struct Piece {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Piece& other) const { return error < other.error; }
};

Piece rule21(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = 0.0;
  double resk = kWgk[10] * fc;
  for (int j = 0; j < 10; ++j) {
    const double x = half * kXgk[static_cast<std::size_t>(j)];
    const double fsum = f(center - x) + f(center + x);
    resk += kWgk[static_cast<std::size_t>(j)] * fsum;
    if (j % 2 == 1) resg += kWg[static_cast<std::size_t>(j / 2)] * fsum;
  }
  const double value = resk * half;
  const double error = std::abs((resk - resg) * half);
  return {a, b, value, error};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, double abs_tol, double rel_tol,
                 int max_intervals) {
  Result out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Piece> heap;
  Piece first = rule21(f, a, b);
  heap.push(first);
  double value = first.value;
  double error = first.error;
  int count = 1;
  const double eps = std::numeric_limits<double>::epsilon();
  while (error > std::max(abs_tol, rel_tol * std::abs(value)) && count < max_intervals) {
    Piece worst = heap.top();
    // Subintervals below resolution cannot be refined further.
    if (std::abs(worst.b - worst.a) <= 64.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) break;
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Piece left = rule21(f, worst.a, mid);
    Piece right = rule21(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  // Re-sum from the pieces to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error = error;
  out.intervals = count;
  out.converged = error <= std::max(abs_tol, rel_tol * std::abs(value));
  return out;
}

}  // namespace abc::quad

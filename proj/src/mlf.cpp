#include "abc/mlf.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "abc/errors.hpp"
#include "abc/gamma.hpp"
#include "abc/quadrature.hpp"

namespace abc {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMaxPositiveZ = 50.0;
constexpr double kIntegralUpper = 50.0;  // e^-50 ~ 2e-22 truncates the tail

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Partial {
  double value = 0.0;
  double error = std::numeric_limits<double>::infinity();
  bool ok = false;
};

// sum_k c_k z^k / Gamma(alpha k + beta), c_k = (rho)_k / k!.
Partial power_series(double rho, double alpha, double beta, double z) {
  CompensatedSum sum;
  double abs_sum = 0.0;
  const double az = std::abs(z);
  const double growth = az > 0.0 ? std::pow(az, 1.0 / alpha) : 0.0;
  const double log_az = az > 0.0 ? std::log(az) : 0.0;

  double power = 1.0;  // z^k while representable
  bool log_mode = false;
  double coeff = 1.0;  // (rho)_k / k!
  double log_coeff = 0.0;
  double last_terms = 0.0;
  int small_run = 0;
  constexpr int kMaxTerms = 4000;

  for (int k = 0; k < kMaxTerms; ++k) {
    if (k > 0) {
      const double ratio = (rho + k - 1.0) / k;
      coeff *= ratio;
      log_coeff += std::log(std::abs(ratio));
      if (!log_mode) {
        power *= z;
        if (std::abs(power) > 1e280 || std::abs(coeff) > 1e280) log_mode = true;
      }
    }
    const double arg = alpha * k + beta;
    double term;
    if (coeff == 0.0) {
      term = 0.0;
    } else if (!log_mode && arg < 170.0) {
      term = coeff * power * special::rgamma(arg);
    } else {
      const double rg = special::rgamma(arg);
      if (rg == 0.0) {
        term = 0.0;
      } else {
        const double log_mag = k * log_az + log_coeff - (arg > 0.0 ? special::log_gamma(arg) : -std::log(std::abs(rg)));
        double sign = (rg < 0.0) ? -1.0 : 1.0;
        if (z < 0.0 && (k % 2 == 1)) sign = -sign;
        if (coeff < 0.0) sign = -sign;
        term = sign * std::exp(log_mag);
      }
    }
    if (!std::isfinite(term)) return {};
    sum.add(term);
    abs_sum += std::abs(term);
    last_terms = std::abs(term);
    const bool past_peak = alpha * k > growth + 2.0 && k > rho + 2.0;
    if (past_peak && last_terms <= kEps * 1e-3 * std::max(1.0, std::abs(sum.value()))) {
      if (++small_run >= 3) {
        Partial out;
        out.value = sum.value();
        out.error = 8.0 * kEps * abs_sum + 4.0 * last_terms;
        out.ok = std::isfinite(out.value);
        return out;
      }
    } else {
      small_run = 0;
    }
  }
  return {};
}

// -sum_{k=1}^{K} z^{-k} / Gamma(beta - alpha k), z < 0, 0 < alpha < 1.
Partial asymptotic_series(double alpha, double beta, double z, const MlfAccuracy& acc) {
  const double x = -z;
  const double growth = std::pow(x, 1.0 / alpha);
  // Contributions beyond all orders are O(e^{-x^{1/alpha}}).
  if (growth < std::log(100.0 / acc.abs_tol)) return {};
  CompensatedSum sum;
  double inv_power = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= acc.asymptotic_terms; ++k) {
    inv_power /= z;
    const double term = -inv_power * special::rgamma(beta - alpha * k);
    sum.add(term);
    const double mag = std::abs(term);
    // Poles of Gamma give exact zeros; judge convergence on the pair.
    const double pair = std::max(mag, prev == std::numeric_limits<double>::infinity() ? mag : prev);
    if (k >= 2 && pair <= 1e-2 * acc.abs_tol) {
      Partial out;
      out.value = sum.value();
      out.error = pair + std::exp(-growth);
      out.ok = true;
      return out;
    }
    if (k >= 3 && mag > last && mag > 0.0 && last > 0.0) break;  // diverging
    prev = mag;
    if (mag > 0.0) last = mag;
  }
  Partial out;
  out.value = sum.value();
  out.ok = false;
  return out;
}

// Quadrature of the collapsed-contour integral for beta < 1 + alpha (after reduction).
Partial contour_integral_reduced(double alpha, double beta, double x, double tol) {
  const double p = 1.0 + alpha - beta;  // r = w^{1/p} absorbs r^{alpha-beta}
  const double sb = std::sin(std::numbers::pi * beta);
  const double sba = std::sin(std::numbers::pi * (beta - alpha));
  const double ca = std::cos(std::numbers::pi * alpha);
  const double sa = std::sin(std::numbers::pi * alpha);
  auto integrand = [=](double w) {
    if (w <= 0.0) {
      // r -> 0 limit: r^a -> 0.
      return (x * sba) / (std::numbers::pi * p * x * x);
    }
    const double r = std::pow(w, 1.0 / p);
    const double ra = std::pow(r, alpha);
    const double shifted = ra + x * ca;
    const double denom = shifted * shifted + x * x * sa * sa;
    return std::exp(-r) * (ra * sb + x * sba) / (std::numbers::pi * p * denom);
  };
  const double w_upper = std::pow(kIntegralUpper, p);
  const double peak = std::pow(x, 1.0 / alpha);
  Partial out;
  if (peak < kIntegralUpper) {
    const double w_peak = std::pow(peak, p);
    const auto left = quad::integrate(integrand, 0.0, w_peak, 0.5 * tol, 0.0, 4000);
    const auto right = quad::integrate(integrand, w_peak, w_upper, 0.5 * tol, 0.0, 4000);
    out.value = left.value + right.value;
    out.error = left.error + right.error;
    out.ok = left.converged && right.converged;
  } else {
    const auto all = quad::integrate(integrand, 0.0, w_upper, tol, 0.0, 4000);
    out.value = all.value;
    out.error = all.error;
    out.ok = all.converged;
  }
  return out;
}

Partial contour_integral(double alpha, double beta, double z, double tol) {
  const double x = -z;
  int lowered = 0;
  double b = beta;
  while (b > 0.75 + alpha) {
    b -= alpha;
    ++lowered;
  }
  Partial base = contour_integral_reduced(alpha, b, x, tol);
  if (!base.ok && !std::isfinite(base.value)) return base;
  double value = base.value;
  double error = base.error;
  for (int i = 0; i < lowered; ++i) {
    value = (value - special::rgamma(b)) / z;
    error = (error + 4.0 * kEps) / std::abs(z);
    b += alpha;
  }
  base.value = value;
  base.error = error;
  return base;
}

// Generalized function by Laplace inversion of s^{a rho - b} (s^a + x)^{-rho}. Its only
// singularity is the branch cut on the negative axis, so the Hankel contour can be
// taken as a circle of radius delta < x^{1/a} plus the two banks of the cut beyond it:
//   circle: (1/pi) int_0^pi Re[e^s F(s) s] dtheta, s = delta e^{i theta}
//   banks: -(1/pi) int_delta^inf e^{-r} Im F(r e^{i pi}) dr
Partial keyhole_generalized(double rho, double alpha, double beta, double x, double tol) {
  using cplx = std::complex<double>;
  const double peak = std::pow(x, 1.0 / alpha);
  const double delta = std::min(1.0, 0.5 * peak);
  auto image = [=](cplx s) { return std::pow(s, alpha * rho - beta) * std::pow(std::pow(s, alpha) + x, -rho); };
  auto circle = [=](double theta) {
    const cplx s = std::polar(delta, theta);
    return std::real(std::exp(s) * image(s) * s) / std::numbers::pi;
  };
  auto bank = [=](double r) {
    return -std::exp(-r) * std::imag(image(std::polar(r, std::numbers::pi))) / std::numbers::pi;
  };
  const auto c = quad::integrate(circle, 0.0, std::numbers::pi, tol / 3.0, 0.0, 4000);
  Partial out;
  out.value = c.value;
  out.error = c.error;
  out.ok = c.converged;
  double lo = delta;
  for (double hi : {peak, kIntegralUpper}) {
    if (hi <= lo) continue;
    const auto b = quad::integrate(bank, lo, hi, tol / 3.0, 0.0, 4000);
    out.value += b.value;
    out.error += b.error;
    out.ok = out.ok && b.converged;
    lo = hi;
  }
  return out;
}

// alpha = 1 and positive integer beta: exp and the downward recurrence.
bool closed_form_alpha_one(double beta, double z, double& value) {
  if (beta < 1.0 || beta != std::floor(beta) || beta > 30.0) return false;
  if (std::abs(z) < 1.0) return false;  // recurrence cancels for small |z|
  double v = std::exp(z);
  for (int m = 1; m < static_cast<int>(beta); ++m) v = (v - special::rgamma(m)) / z;
  value = v;
  return true;
}

void check_finite(double alpha, double beta, double z) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(z))
    throw DomainError("mlf: non-finite argument");
  if (!(alpha > 0.0)) throw DomainError("mlf: alpha must be positive");
}

std::string describe(double alpha, double beta, double z) {
  std::ostringstream os;
  os.precision(17);
  os << "alpha=" << alpha << " beta=" << beta << " z=" << z;
  return os.str();
}

}  // namespace

void MlfAccuracy::validate() const {
  if (!(abs_tol > 0.0) || !(series_cutoff > 0.0) || asymptotic_terms < 1)
    throw DomainError("MlfAccuracy: abs_tol and series_cutoff must be positive, asymptotic_terms >= 1");
}

MlfEvaluation mlf_evaluate(double alpha, double beta, double z, const MlfAccuracy& acc) {
  check_finite(alpha, beta, z);
  acc.validate();
  if (z == 0.0) return {special::rgamma(beta), 0.0, MlfMethod::closed_form};

  if (z > 0.0) {
    if (z > kMaxPositiveZ) throw DomainError("mlf: positive argument above 50 (" + describe(alpha, beta, z) + ")");
    const Partial s = power_series(1.0, alpha, beta, z);
    if (!s.ok) throw NumericalError("mlf: series overflow (" + describe(alpha, beta, z) + ")");
    return {s.value, s.error, MlfMethod::series};
  }

  if (alpha == 1.0) {
    double v = 0.0;
    if (closed_form_alpha_one(beta, z, v)) return {v, 8.0 * kEps, MlfMethod::closed_form};
  }

  const double x = -z;
  const double growth = std::pow(x, 1.0 / alpha);
  Partial series;
  if (x <= acc.series_cutoff && growth <= 40.0) {
    series = power_series(1.0, alpha, beta, z);
    if (series.ok && series.error <= acc.abs_tol) return {series.value, series.error, MlfMethod::series};
  }

  Partial asym;
  if (alpha < 1.0) {
    asym = asymptotic_series(alpha, beta, z, acc);
    if (asym.ok) return {asym.value, asym.error, MlfMethod::asymptotic};

    const Partial integral = contour_integral(alpha, beta, z, 0.1 * acc.abs_tol);
    if (integral.ok && integral.error <= acc.abs_tol) return {integral.value, integral.error, MlfMethod::integral};
    throw AccuracyError("mlf: quadrature did not reach tolerance (" + describe(alpha, beta, z) + ")", integral.value,
                        series.ok ? series.value : asym.value);
  }
  throw AccuracyError("mlf: no route certifies the tolerance (" + describe(alpha, beta, z) + ")", series.value,
                      asym.value);
}

double mlf(double alpha, double beta, double z, const MlfAccuracy& accuracy) {
  return mlf_evaluate(alpha, beta, z, accuracy).value;
}

double mlf_generalized(double rho, double alpha, double beta, double z, const MlfAccuracy& acc) {
  check_finite(alpha, beta, z);
  if (!std::isfinite(rho) || !(rho > 0.0)) throw DomainError("mlf_generalized: rho must be positive");
  acc.validate();
  if (rho == 1.0) return mlf(alpha, beta, z, acc);
  if (z == 0.0) return special::rgamma(beta);
  if (z > kMaxPositiveZ) throw DomainError("mlf_generalized: positive argument above 50");
  const Partial s = power_series(rho, alpha, beta, z);
  if (!s.ok) throw NumericalError("mlf_generalized: series overflow (" + describe(alpha, beta, z) + ")");
  if (z > 0.0 || s.error <= acc.abs_tol) return s.value;

  // Integer rho: a rho E^{rho+1}_{a,b} = (1 + a rho - b) E^rho_{a,b} + E^rho_{a,b-1}, down to rho = 1.
  if (rho == std::floor(rho) && rho <= 12.0) {
    const double m = rho - 1.0;
    return ((1.0 + alpha * m - beta) * mlf_generalized(m, alpha, beta, z, acc) +
            mlf_generalized(m, alpha, beta - 1.0, z, acc)) /
           (alpha * m);
  }
  if (alpha < 1.0) {
    const Partial q = keyhole_generalized(rho, alpha, beta, -z, 0.1 * acc.abs_tol);
    if (q.ok && q.error <= acc.abs_tol) return q.value;
  }
  throw AccuracyError("mlf_generalized: series cancellation exceeds tolerance (" + describe(alpha, beta, z) + ")",
                      s.value - s.error, s.value + s.error);
}

MlfBoundEstimate mlf_bound_constant(double alpha, double beta, double z_max, int n_probe, const MlfAccuracy& acc) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("mlf_bound_constant: alpha must lie in (0, 1]");
  if (!(z_max > 0.0) || !std::isfinite(z_max)) throw DomainError("mlf_bound_constant: z_max must be positive");
  if (n_probe < 2) throw DomainError("mlf_bound_constant: n_probe must be >= 2");
  double best = std::abs(mlf(alpha, beta, 0.0, acc));
  const double lo = std::log(1e-6);
  const double hi = std::log(std::max(z_max, 1e-6));
  for (int i = 0; i < n_probe; ++i) {
    const double zz = std::exp(lo + (hi - lo) * i / (n_probe - 1));
    best = std::max(best, (1.0 + zz) * std::abs(mlf(alpha, beta, -zz, acc)));
  }
  return {alpha, beta, 1.05 * best, z_max};
}

double kernel_primitive(double alpha, double gamma_rate, double t) {
  if (!std::isfinite(t) || t < 0.0) throw DomainError("kernel_primitive: t must be non-negative");
  if (!std::isfinite(gamma_rate) || gamma_rate < 0.0)
    throw DomainError("kernel_primitive: gamma_rate must be non-negative");
  if (t == 0.0) return 0.0;
  if (gamma_rate == 0.0) return t;  // kernel is identically one
  return t * mlf(alpha, 2.0, -gamma_rate * std::pow(t, alpha));
}

}  // namespace abc

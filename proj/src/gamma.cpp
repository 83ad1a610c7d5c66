#include "abc/gamma.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "abc/errors.hpp"

namespace abc::special {
namespace {

// Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficient set).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczosCoeff = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5};

constexpr std::array<double, 21> kFactorial = {
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0};

constexpr double kGammaOverflow = 171.6243769563027;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// sin(pi x) with exact zeros at the integers and no loss for large |x|.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);  // r in (-2, 2)
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  if (r > 0.5) return std::sin(std::numbers::pi * (1.0 - r));
  if (r < -0.5) return -std::sin(std::numbers::pi * (1.0 + r));
  return std::sin(std::numbers::pi * r);
}

// Series part of the Lanczos formula for Gamma(z + 1).
double lanczos_sum(double z) {
  double x = kLanczosCoeff[0];
  for (std::size_t i = 1; i < kLanczosCoeff.size(); ++i) x += kLanczosCoeff[i] / (z + static_cast<double>(i));
  return x;
}

// Gamma(x) for x >= 0.5.
double gamma_right(double x) {
  if (x == std::floor(x) && x <= 21.0) return kFactorial[static_cast<std::size_t>(x) - 1];
  if (x > kGammaOverflow) return std::numeric_limits<double>::infinity();
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  // t^(z+1/2) split in two halves so the power cannot overflow before e^-t.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * lanczos_sum(z);
}

double log_gamma_right(double x) {
  if (x == std::floor(x) && x <= 21.0) return std::log(kFactorial[static_cast<std::size_t>(x) - 1]);
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

}  // namespace

double gamma(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
  if (is_nonpositive_integer(x)) throw DomainError("gamma: pole at non-positive integer");
  if (x >= 0.5) return gamma_right(x);
  // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
  return std::numbers::pi / (sin_pi(x) * gamma_right(1.0 - x));
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_gamma: argument must be positive and finite");
  if (x >= 0.5) return log_gamma_right(x);
  return std::log(std::numbers::pi / std::abs(sin_pi(x))) - log_gamma_right(1.0 - x);
}

double rgamma(double x) {
  if (!std::isfinite(x)) throw DomainError("rgamma: non-finite argument");
  if (is_nonpositive_integer(x)) return 0.0;
  if (x >= 0.5) {
    if (x < kGammaOverflow) return 1.0 / gamma_right(x);
    return std::exp(-log_gamma_right(x));
  }
  const double s = sin_pi(x);
  const double y = 1.0 - x;
  if (y < kGammaOverflow) return gamma_right(y) * s / std::numbers::pi;
  const double sign = s < 0.0 ? -1.0 : 1.0;
  return sign * std::exp(log_gamma_right(y) + std::log(std::abs(s) / std::numbers::pi));
}

}  // namespace abc::special

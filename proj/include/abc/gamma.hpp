#pragma once

namespace abc::special {

/// Gamma function on the real line. Throws DomainError at the poles
/// (non-positive integers) and returns +inf past the overflow threshold.
double gamma(double x);

/// log|Gamma(x)| for x > 0.
double log_gamma(double x);

/// 1/Gamma(x), an entire function: exactly zero at the poles of Gamma and
/// finite everywhere (underflows to zero for large x).
double rgamma(double x);

}  // namespace abc::special

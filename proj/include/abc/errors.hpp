#pragma once

#include <stdexcept>
#include <string>

namespace abc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Time grids are malformed or do not match between operands.
class GridError : public Error {
 public:
  using Error::Error;
};

/// Operands were built on different spectral bases, or a setting is invalid.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// A computed quantity came out non-finite.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A special-function evaluation could not certify the requested accuracy.
/// Carries the two best candidate values so callers can inspect the mismatch.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double candidate_a, double candidate_b)
      : Error(what), candidate_a_(candidate_a), candidate_b_(candidate_b) {}

  double candidate_a() const noexcept { return candidate_a_; }
  double candidate_b() const noexcept { return candidate_b_; }

 private:
  double candidate_a_;
  double candidate_b_;
};

}  // namespace abc

#pragma once

#include <stdexcept>
#include <string>

namespace nmflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A matrix failed the Hermitian / unit-trace / positivity checks of a state.
class InvalidState : public Error {
 public:
  using Error::Error;
};

/// A linear map could not be inverted. Carries the smallest singular value
/// of its superoperator so callers can report how close to singular it was.
class NonInvertible : public Error {
 public:
  NonInvertible(const std::string& what, double smallest_singular_value, double time = -1.0)
      : Error(what), smallest_singular_value_(smallest_singular_value), time_(time) {}

  double smallest_singular_value() const noexcept { return smallest_singular_value_; }
  /// Time at which the singularity was met, negative if unknown.
  double time() const noexcept { return time_; }

 private:
  double smallest_singular_value_;
  double time_;
};

/// The decoherence function vanished, so a time-local rate is undefined.
class ZeroCrossing : public Error {
 public:
  ZeroCrossing(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class DivergentIntegral : public Error {
 public:
  using Error::Error;
};

class DegenerateBasis : public Error {
 public:
  using Error::Error;
};

}  // namespace nmflow

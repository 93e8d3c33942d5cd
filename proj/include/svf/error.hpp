#pragma once

#include <stdexcept>
#include <string>

namespace svf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension mismatch, non-finite data, or a violated precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside the domain, or at an abscissa with no fiber.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double x) : Error(what), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

/// The simplex engine lost track of feasibility (should not happen on sane data).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace svf

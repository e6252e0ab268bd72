#pragma once

#include <stdexcept>
#include <string>

namespace qkdrate {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Protocol parameters with no physical interpretation (no qubits in any role).
class DegenerateParameterError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The function values at the bracket endpoints do not change sign.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Iteration cap reached before the tolerance was met.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_iterate)
      : Error(what), best_iterate_(best_iterate) {}
  double best_iterate() const noexcept { return best_iterate_; }

 private:
  double best_iterate_;
};

/// An objective returned NaN or an infinity.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double abscissa)
      : Error(what), abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

/// The exponent constraint cannot be met for any sacrificed-bit rate.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace qkdrate

#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>

namespace fuzzyest {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric argument lies outside the domain of the operation (size <= 0,
/// actual effort <= 0, invalid membership-function parameters, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A fuzzy partition request that cannot be honoured (fewer than two terms).
class InvalidPartitionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A crisp input lies beyond the clamp band of a linguistic variable.
class OutOfRangeError : public Error {
 public:
  OutOfRangeError(std::string variable, double value, double lo, double hi);

  const std::string& variable() const noexcept { return variable_; }
  double value() const noexcept { return value_; }

 private:
  std::string variable_;
  double value_;
};

/// No rule fired above degree zero, so the aggregate output set is empty.
class NoRuleFiredError : public Error {
 public:
  NoRuleFiredError(std::string subsystem, std::map<std::string, double> inputs);

  const std::string& subsystem() const noexcept { return subsystem_; }
  const std::map<std::string, double>& inputs() const noexcept { return inputs_; }

 private:
  std::string subsystem_;
  std::map<std::string, double> inputs_;
};

/// A rating level that is not defined for a cost driver (e.g. STOR very low).
class InvalidRatingError : public Error {
 public:
  InvalidRatingError(std::string driver, std::string level);

  const std::string& driver() const noexcept { return driver_; }

 private:
  std::string driver_;
};

/// Malformed text input. Line numbers are 1-based; 0 means "not line specific".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace fuzzyest

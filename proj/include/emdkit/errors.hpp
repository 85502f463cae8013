#ifndef EMDKIT_ERRORS_HPP
#define EMDKIT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace emdkit {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input data or configuration (CLI exit code 1).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A computation that cannot proceed numerically (CLI exit code 2).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// File system problems (CLI exit code 3).
class IoError : public Error {
 public:
  using Error::Error;
};

class InvalidSignalError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InsufficientDataError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidKnotsError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class AliasingError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class RankDeficiencyError : public NumericalError {
 public:
  RankDeficiencyError(const std::string& what, std::size_t index)
      : NumericalError(what), index_(index) {}

  /// Position (in orthogonalization order) of the first dependent input.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class UndefinedRatioError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class UndefinedPeriodError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace emdkit

#endif  // EMDKIT_ERRORS_HPP

#pragma once

#include <stdexcept>
#include <string>

namespace dcov {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside the domain of the operation (p = 0, alpha outside
/// its convergence band, nonpositive budgets, unknown tags).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The data itself is unusable: non-finite entries, malformed CSV, missing
/// files, mismatched blocks.
class DataError : public Error {
 public:
  using Error::Error;
};

/// The sample is too small for the requested estimator.
class SampleSizeError : public DataError {
 public:
  SampleSizeError(const std::string& what, std::size_t required, std::size_t actual)
      : DataError(what + ": requires n >= " + std::to_string(required) + ", got " +
                  std::to_string(actual)) {}
};

}  // namespace dcov
